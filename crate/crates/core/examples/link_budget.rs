//! Walks one UE away from its AP and prints SINR, rate and the utility terms
//! for a few transmit powers, with two co-channel interferers.

use vlc_udn::channel::{channel_gain, ChannelParams, Pos3};
use vlc_udn::link::{evaluate_slot, per_ue_bandwidth, LinkParams, PowerVector, SlotChannelSnapshot, UtilityWeights};

fn main() -> vlc_udn::Result<()> {
    let ch = ChannelParams::indoor_default();
    let link = LinkParams::default();
    let weights = UtilityWeights { energy_weight: 1000.0, interference_weight: 1e8 };
    let ap = Pos3::new(5.0, 5.0, 3.0);
    let interferers = [Pos3::new(9.0, 5.0, 3.0), Pos3::new(5.0, 1.0, 3.0)];
    println!("per-UE bandwidth with one UE: {:.2} MHz", per_ue_bandwidth(&link, 1)? / 1e6);

    for x_mw in [1.0, 2.0, 4.0] {
        println!("\nserving power {x_mw} mW, interferers at 2 mW");
        println!("  offset   sinr        rate [Mbps]  utility");
        for i in 0..=6 {
            let ue = Pos3::new(5.0 + i as f64 * 0.15, 5.0, 1.0);
            let gains = interferers.iter().map(|&p| channel_gain(p, ue, &ch)).collect::<vlc_udn::Result<Vec<_>>>()?;
            // Our AP leaking into one UE in each neighbouring cell.
            let outgoing = interferers
                .iter()
                .map(|p| channel_gain(ap, Pos3::new(p.x, p.y, 1.0), &ch).map(|g| vec![g]))
                .collect::<vlc_udn::Result<Vec<_>>>()?;
            let snap = SlotChannelSnapshot {
                serving_gains: vec![channel_gain(ap, ue, &ch)?],
                interferer_gains: vec![gains],
                outgoing_gains: outgoing,
            };
            let powers = PowerVector::with_uniform_neighbors(vec![x_mw * 1e-3], interferers.len(), 2e-3);
            let e = evaluate_slot(&powers, &snap, &link, ch.responsivity, &weights)?;
            println!("  {:5.2} m  {:10.3}  {:11.3}  {:.4}", i as f64 * 0.15, e.sinrs[0], e.rates[0] / 1e6, e.utility);
        }
    }
    Ok(())
}
