//! Prints the LoS gain of one AP over a horizontal slice at UE height, as an
//! ASCII heat map plus a radial profile.

use vlc_udn::channel::{channel_gain, ChannelParams, Pos3};

fn main() -> vlc_udn::Result<()> {
    let params = ChannelParams::indoor_default();
    let ap = Pos3::new(0.0, 0.0, 3.0);
    let ue_z = 1.0;
    println!("Lambertian order m = {:.3}, FOV = {:.1}°", params.lambertian_order(), params.fov_angle.to_degrees());

    let h0 = channel_gain(ap, Pos3::new(0.0, 0.0, ue_z), &params)?;
    let shades = [' ', '.', ':', '-', '=', '+', '*', '#', '%', '@'];
    println!("\ngain relative to the peak, 5 m × 5 m around the AP:");
    for iy in -12..=12 {
        let row: String = (-25..=25)
            .map(|ix| {
                let p = Pos3::new(ix as f64 * 0.1, iy as f64 * 0.2, ue_z);
                let g = channel_gain(ap, p, &params).unwrap_or(0.0) / h0;
                shades[((g * (shades.len() - 1) as f64).round() as usize).min(shades.len() - 1)]
            })
            .collect();
        println!("  |{row}|");
    }

    println!("\noffset [m]   gain");
    for i in 0..=12 {
        let r = i as f64 * 0.25;
        println!("  {r:5.2}   {:.4e}", channel_gain(ap, Pos3::new(r, 0.0, ue_z), &params)?);
    }
    Ok(())
}
