//! Ceiling AP grid, spectrum-block reuse layouts, and co-channel neighbor sets.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::channel::{ChannelParams, Pos3};
use crate::error::{Error, Result};

pub type ApId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumMode {
    /// Checkerboard over two blocks.
    TwoBlock,
    /// 2×2 tiling over four blocks; co-channel APs are two spacings apart.
    FourBlock,
}

impl SpectrumMode {
    pub fn block_count(self) -> usize {
        match self {
            SpectrumMode::TwoBlock => 2,
            SpectrumMode::FourBlock => 4,
        }
    }

    pub fn block_at(self, row: usize, col: usize) -> usize {
        match self {
            SpectrumMode::TwoBlock => (row + col) % 2,
            SpectrumMode::FourBlock => (row % 2) + 2 * (col % 2),
        }
    }
}

/// Axis-aligned rectangle on the floor plan, meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Rect {
    pub fn contains(&self, x: f64, y: f64) -> bool {
        x >= self.x_min && x <= self.x_max && y >= self.y_min && y <= self.y_max
    }

    pub fn center(&self) -> (f64, f64) {
        ((self.x_min + self.x_max) / 2.0, (self.y_min + self.y_max) / 2.0)
    }

    pub fn diagonal(&self) -> f64 {
        (self.x_max - self.x_min).hypot(self.y_max - self.y_min)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApGrid {
    pub rows: usize,
    pub cols: usize,
    pub spacing: f64,
    pub ap_height: f64,
    /// Square cell edge, equal to the spacing.
    pub cell_size: (f64, f64),
    pub ap_positions: Vec<Pos3>,
    /// Block index per AP id; empty until [`assign_blocks`] runs.
    pub block_of: Vec<usize>,
}

impl ApGrid {
    pub fn len(&self) -> usize {
        self.ap_positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ap_positions.is_empty()
    }

    pub fn id_of(&self, row: usize, col: usize) -> ApId {
        row * self.cols + col
    }

    pub fn row_col(&self, id: ApId) -> (usize, usize) {
        (id / self.cols, id % self.cols)
    }

    pub fn position(&self, id: ApId) -> Result<Pos3> {
        self.ap_positions.get(id).copied().ok_or(Error::UnknownAp(id))
    }

    /// Floor-plan footprint of the cell served by `id`.
    pub fn cell_bounds(&self, id: ApId) -> Result<Rect> {
        let p = self.position(id)?;
        let (hw, hh) = (self.cell_size.0 / 2.0, self.cell_size.1 / 2.0);
        Ok(Rect { x_min: p.x - hw, x_max: p.x + hw, y_min: p.y - hh, y_max: p.y + hh })
    }

    /// AP whose horizontal position is closest to `(x, y)`; lowest id wins ties.
    pub fn nearest_ap(&self, x: f64, y: f64) -> ApId {
        let probe = Pos3::new(x, y, self.ap_height);
        let mut best = 0;
        let mut best_d = f64::INFINITY;
        for (id, p) in self.ap_positions.iter().enumerate() {
            let d = p.horizontal_distance(&probe);
            if d < best_d {
                best_d = d;
                best = id;
            }
        }
        best
    }

    pub fn center_ap(&self) -> ApId {
        self.id_of(self.rows / 2, self.cols / 2)
    }
}

/// Row-major AP grid with AP (i, j) at `(j·s + s/2, i·s + s/2, ap_height)`.
pub fn build_grid(rows: usize, cols: usize, spacing: f64, ap_height: f64) -> Result<ApGrid> {
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidDimension(format!("grid must be at least 1×1, got {rows}×{cols}")));
    }
    if !(spacing > 0.0) {
        return Err(Error::InvalidDimension(format!("AP spacing must be positive, got {spacing}")));
    }
    if !(ap_height > 0.0) {
        return Err(Error::InvalidDimension(format!("AP height must be positive, got {ap_height}")));
    }
    let half = spacing / 2.0;
    let ap_positions = (0..rows)
        .flat_map(|i| (0..cols).map(move |j| Pos3::new(j as f64 * spacing + half, i as f64 * spacing + half, ap_height)))
        .collect();
    Ok(ApGrid {
        rows,
        cols,
        spacing,
        ap_height,
        cell_size: (spacing, spacing),
        ap_positions,
        block_of: Vec::new(),
    })
}

pub fn assign_blocks(grid: &ApGrid, mode: SpectrumMode) -> Vec<usize> {
    (0..grid.len())
        .map(|id| {
            let (r, c) = grid.row_col(id);
            mode.block_at(r, c)
        })
        .collect()
}

/// Co-channel APs whose light can reach some point of `ap`'s cell within the
/// photodiode FOV: horizontal center distance ≤ `(ap_height − ue_height)·tan θ_FOV`
/// plus half the cell diagonal.
pub fn cochannel_neighbors(
    grid: &ApGrid,
    ap: ApId,
    ue_height: f64,
    params: &ChannelParams,
) -> Result<BTreeSet<ApId>> {
    let center = grid.position(ap)?;
    if grid.block_of.len() != grid.len() {
        return Err(Error::InvalidDimension("spectrum blocks have not been assigned".into()));
    }
    let reach = (grid.ap_height - ue_height) * params.fov_angle.tan() + grid.cell_bounds(ap)?.diagonal() / 2.0;
    let block = grid.block_of[ap];
    Ok(grid
        .ap_positions
        .iter()
        .enumerate()
        .filter(|&(id, p)| id != ap && grid.block_of[id] == block && p.horizontal_distance(&center) <= reach + 1e-9)
        .map(|(id, _)| id)
        .collect())
}

/// Grid with blocks assigned, its central serving AP, and that AP's interferers.
#[derive(Debug, Clone)]
pub struct CellTopology {
    pub grid: ApGrid,
    pub mode: SpectrumMode,
    pub center_ap: ApId,
    pub neighbors: Vec<ApId>,
}

impl CellTopology {
    pub fn new(
        rows: usize,
        cols: usize,
        spacing: f64,
        ap_height: f64,
        mode: SpectrumMode,
        ue_height: f64,
        params: &ChannelParams,
    ) -> Result<Self> {
        if !(ue_height >= 0.0 && ue_height < ap_height) {
            return Err(Error::InvalidDimension(format!(
                "UE height {ue_height} must lie in [0, AP height {ap_height})"
            )));
        }
        let mut grid = build_grid(rows, cols, spacing, ap_height)?;
        grid.block_of = assign_blocks(&grid, mode);
        let center_ap = grid.center_ap();
        let neighbors = cochannel_neighbors(&grid, center_ap, ue_height, params)?.into_iter().collect();
        Ok(CellTopology { grid, mode, center_ap, neighbors })
    }

    pub fn center_bounds(&self) -> Rect {
        self.grid.cell_bounds(self.center_ap).expect("center AP is in the grid")
    }

    pub fn center_position(&self) -> Pos3 {
        self.grid.ap_positions[self.center_ap]
    }

    /// Number of co-channel interfering APs around the central cell.
    pub fn interferer_count(&self) -> usize {
        self.neighbors.len()
    }
}
