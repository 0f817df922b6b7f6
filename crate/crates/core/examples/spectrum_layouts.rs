//! Shows how the two spectrum-block layouts colour a 5×5 AP grid and which
//! co-channel APs can reach the central cell.

use vlc_udn::channel::ChannelParams;
use vlc_udn::topology::{CellTopology, SpectrumMode};

fn main() -> vlc_udn::Result<()> {
    let params = ChannelParams::indoor_default();
    for mode in [SpectrumMode::TwoBlock, SpectrumMode::FourBlock] {
        let topo = CellTopology::new(5, 5, 2.0, 3.0, mode, 1.0, &params)?;
        println!("{mode:?} ({} blocks):", mode.block_count());
        for r in 0..topo.grid.rows {
            let row: Vec<String> = (0..topo.grid.cols)
                .map(|c| {
                    let id = topo.grid.id_of(r, c);
                    let mark = if id == topo.center_ap {
                        '*'
                    } else if topo.neighbors.contains(&id) {
                        '!'
                    } else {
                        ' '
                    };
                    format!("{}{mark}", topo.grid.block_of[id])
                })
                .collect();
            println!("  {}", row.join(" "));
        }
        println!("  serving AP {} (*), {} co-channel interferers (!): {:?}\n", topo.center_ap, topo.interferer_count(), topo.neighbors);
    }
    Ok(())
}
