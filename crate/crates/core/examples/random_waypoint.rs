//! Tracks a few UEs under random-waypoint mobility inside the central cell and
//! reports how far they travel and how well they cover it.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use vlc_udn::mobility::{init_ues, rwp_step, MobilityConfig};
use vlc_udn::topology::Rect;

fn main() -> vlc_udn::Result<()> {
    let cfg = MobilityConfig {
        v_min: 0.1,
        v_max: 1.0,
        slot_duration: 0.1,
        ue_height: 1.0,
        cell_bounds: Rect { x_min: 4.0, x_max: 6.0, y_min: 4.0, y_max: 6.0 },
    };
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut ues = init_ues(3, 12, &cfg, &mut rng)?;
    let mut travelled = vec![0.0; ues.len()];
    let mut visits = [[0usize; 4]; 4];

    for slot in 0..3000 {
        let next: Vec<_> = ues.iter().map(|u| rwp_step(u, &cfg, &mut rng)).collect();
        for (i, (a, b)) in ues.iter().zip(&next).enumerate() {
            travelled[i] += a.position.distance(&b.position);
            let cx = (((b.position.x - 4.0) / 0.5) as usize).min(3);
            let cy = (((b.position.y - 4.0) / 0.5) as usize).min(3);
            visits[cy][cx] += 1;
        }
        ues = next;
        if slot % 500 == 0 {
            let pos: Vec<String> = ues.iter().map(|u| format!("({:.2}, {:.2})", u.position.x, u.position.y)).collect();
            println!("slot {slot:4}: {}", pos.join(" "));
        }
    }
    for (i, d) in travelled.iter().enumerate() {
        println!("UE {i}: {d:.1} m in 300 s (mean speed {:.2} m/s)", d / 300.0);
    }
    println!("occupancy of a 4×4 grid over the cell (share of UE-slots):");
    let total: usize = visits.iter().flatten().sum();
    for row in visits.iter().rev() {
        let cells: Vec<String> = row.iter().map(|&v| format!("{:5.3}", v as f64 / total as f64)).collect();
        println!("  {}", cells.join(" "));
    }
    Ok(())
}
