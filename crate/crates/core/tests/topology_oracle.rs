//! Co-channel neighbor sets against a brute-force sweep of cell points.

use vlc_udn::channel::{link_geometry, ChannelParams, Pos3};
use vlc_udn::topology::{build_grid, CellTopology, SpectrumMode};

/// AP `other` counts as an interferer when some sampled point of the serving
/// cell sees it within the FOV.
fn brute_force_neighbors(mode: SpectrumMode, fov_deg: f64) -> Vec<usize> {
    let grid = build_grid(5, 5, 2.0, 3.0).unwrap();
    let center = grid.center_ap();
    let (cr, cc) = grid.row_col(center);
    let c = grid.ap_positions[center];
    let fov = fov_deg.to_radians();
    let mut out = Vec::new();
    for id in 0..grid.len() {
        let (r, col) = grid.row_col(id);
        if id == center || mode.block_at(r, col) != mode.block_at(cr, cc) {
            continue;
        }
        let ap = grid.ap_positions[id];
        let steps = 40;
        let visible = (0..=steps).any(|i| {
            (0..=steps).any(|j| {
                let ue = Pos3::new(c.x - 1.0 + 2.0 * i as f64 / steps as f64, c.y - 1.0 + 2.0 * j as f64 / steps as f64, 1.0);
                link_geometry(ap, ue).unwrap().incidence_angle <= fov
            })
        });
        if visible {
            out.push(id);
        }
    }
    out
}

#[test]
fn four_block_center_has_eight_cochannel_neighbors() {
    let p = ChannelParams::indoor_default();
    let t = CellTopology::new(5, 5, 2.0, 3.0, SpectrumMode::FourBlock, 1.0, &p).unwrap();
    let oracle = brute_force_neighbors(SpectrumMode::FourBlock, 70.0);
    assert_eq!(oracle, vec![0, 2, 4, 10, 14, 20, 22, 24]);
    assert_eq!(t.neighbors, oracle);
}

#[test]
fn two_block_center_matches_enumeration() {
    let p = ChannelParams::indoor_default();
    let t = CellTopology::new(5, 5, 2.0, 3.0, SpectrumMode::TwoBlock, 1.0, &p).unwrap();
    let oracle = brute_force_neighbors(SpectrumMode::TwoBlock, 70.0);
    assert_eq!(oracle.len(), 12);
    assert_eq!(t.neighbors, oracle);
}

#[test]
fn narrow_fov_drops_far_neighbors() {
    let p = ChannelParams::from_config_units(1.0, 60.0, 45.0, 0.54).unwrap();
    let t = CellTopology::new(5, 5, 2.0, 3.0, SpectrumMode::FourBlock, 1.0, &p).unwrap();
    // reach = 2·tan 45° + √2 ≈ 3.41 m < 4 m
    assert!(t.neighbors.is_empty());
    let t = CellTopology::new(5, 5, 2.0, 3.0, SpectrumMode::TwoBlock, 1.0, &p).unwrap();
    assert_eq!(t.neighbors, brute_force_neighbors(SpectrumMode::TwoBlock, 45.0));
    assert_eq!(t.neighbors.len(), 4);
}

#[test]
fn four_block_separation_exceeds_two_block() {
    for mode in [SpectrumMode::TwoBlock, SpectrumMode::FourBlock] {
        let mut grid = build_grid(6, 7, 2.0, 3.0).unwrap();
        grid.block_of = vlc_udn::topology::assign_blocks(&grid, mode);
        let mut min_sep = f64::INFINITY;
        for a in 0..grid.len() {
            for b in 0..grid.len() {
                if a != b && grid.block_of[a] == grid.block_of[b] {
                    min_sep = min_sep.min(grid.ap_positions[a].horizontal_distance(&grid.ap_positions[b]));
                }
            }
            let (r, c) = grid.row_col(a);
            if c + 1 < grid.cols {
                assert_ne!(grid.block_of[a], grid.block_of[grid.id_of(r, c + 1)]);
            }
            if r + 1 < grid.rows {
                assert_ne!(grid.block_of[a], grid.block_of[grid.id_of(r + 1, c)]);
            }
            assert!(grid.block_of[a] < mode.block_count());
        }
        match mode {
            SpectrumMode::TwoBlock => assert!((min_sep - 8f64.sqrt()).abs() < 1e-12),
            SpectrumMode::FourBlock => assert_eq!(min_sep, 4.0),
        }
    }
}
