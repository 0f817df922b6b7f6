use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};

use super::state::{StateBins, StateKey};

/// Sparse state-action values. Entries that were never written read as 0.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct QTable {
    action_count: usize,
    rows: BTreeMap<StateKey, BTreeMap<usize, f64>>,
}

impl QTable {
    pub fn new(action_count: usize) -> Self {
        QTable { action_count, rows: BTreeMap::new() }
    }

    pub fn action_count(&self) -> usize {
        self.action_count
    }

    pub fn get(&self, state: &StateKey, action: usize) -> f64 {
        self.rows.get(state).and_then(|r| r.get(&action)).copied().unwrap_or(0.0)
    }

    pub fn set(&mut self, state: &StateKey, action: usize, value: f64) {
        assert!(value.is_finite(), "Q-values must be finite");
        assert!(action < self.action_count, "action {action} out of range");
        match self.rows.get_mut(state) {
            Some(row) => {
                row.insert(action, value);
            }
            None => {
                self.rows.insert(state.clone(), BTreeMap::from([(action, value)]));
            }
        }
    }

    /// Number of stored (non-default) entries.
    pub fn len(&self) -> usize {
        self.rows.values().map(BTreeMap::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn state_count(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, state: &StateKey) -> Option<&BTreeMap<usize, f64>> {
        self.rows.get(state)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&StateKey, usize, f64)> {
        self.rows.iter().flat_map(|(s, row)| row.iter().map(move |(&a, &q)| (s, a, q)))
    }

    /// `max_a Q(s, a)`, counting unwritten actions as 0.
    pub fn max_value(&self, state: &StateKey) -> f64 {
        match self.rows.get(state) {
            None => 0.0,
            Some(row) => {
                let stored = row.values().copied().fold(f64::NEG_INFINITY, f64::max);
                if row.len() < self.action_count {
                    stored.max(0.0)
                } else {
                    stored
                }
            }
        }
    }

    /// All actions attaining `max_value(state)`, ascending.
    pub fn maximizers(&self, state: &StateKey) -> Vec<usize> {
        let best = self.max_value(state);
        match self.rows.get(state) {
            None => (0..self.action_count).collect(),
            Some(row) => (0..self.action_count)
                .filter(|a| row.get(a).copied().unwrap_or(0.0) == best)
                .collect(),
        }
    }

    /// Writes `state_key<TAB>action_index<TAB>q_value` lines after a header
    /// line recording the binning and action count.
    pub fn export<W: Write>(&self, bins: &StateBins, mut out: W) -> Result<()> {
        writeln!(
            out,
            "# rate_bins={} gain_bins={} zeta_cap={} action_count={}",
            bins.rate_bins, bins.gain_bins, bins.zeta_cap, self.action_count
        )?;
        for (s, a, q) in self.iter() {
            writeln!(out, "{s}\t{a}\t{q}")?;
        }
        Ok(())
    }

    pub fn import<R: BufRead>(input: R) -> Result<(StateBins, QTable)> {
        let mut lines = input.lines().enumerate();
        let header = match lines.next() {
            Some((_, line)) => line?,
            None => return Err(Error::QTableFormat { line: 1, reason: "empty file".into() }),
        };
        let (bins, action_count) = parse_header(&header)?;
        let mut table = QTable::new(action_count);
        for (i, line) in lines {
            let line = line?;
            let lineno = i + 1;
            if line.trim().is_empty() {
                continue;
            }
            let bad = |reason: String| Error::QTableFormat { line: lineno, reason };
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 3 {
                return Err(bad(format!("expected 3 tab-separated fields, got {}", fields.len())));
            }
            let state: StateKey = fields[0].parse().map_err(bad)?;
            let action: usize = fields[1].parse().map_err(|e| bad(format!("action index: {e}")))?;
            let q: f64 = fields[2].parse().map_err(|e| bad(format!("q value: {e}")))?;
            if action >= action_count {
                return Err(bad(format!("action {action} out of 0..{action_count}")));
            }
            if !q.is_finite() {
                return Err(bad("non-finite q value".into()));
            }
            table.set(&state, action, q);
        }
        Ok((bins, table))
    }
}

fn parse_header(header: &str) -> Result<(StateBins, usize)> {
    let bad = |reason: &str| Error::QTableFormat { line: 1, reason: reason.to_string() };
    let body = header.strip_prefix('#').ok_or_else(|| bad("missing `#` header"))?;
    let mut bins = StateBins::default();
    let mut action_count = None;
    for kv in body.split_whitespace() {
        let (k, v) = kv.split_once('=').ok_or_else(|| bad("header entries must be key=value"))?;
        match k {
            "rate_bins" => bins.rate_bins = v.parse().map_err(|_| bad("rate_bins"))?,
            "gain_bins" => bins.gain_bins = v.parse().map_err(|_| bad("gain_bins"))?,
            "zeta_cap" => bins.zeta_cap = v.parse().map_err(|_| bad("zeta_cap"))?,
            "action_count" => action_count = Some(v.parse().map_err(|_| bad("action_count"))?),
            _ => return Err(bad(&format!("unknown header key `{k}`"))),
        }
    }
    Ok((bins, action_count.ok_or_else(|| bad("missing action_count"))?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(d: usize) -> StateKey {
        StateKey { rate_bins: vec![0; d], gain_bins: vec![1; d], density: d }
    }

    #[test]
    fn absent_reads_zero() {
        let q = QTable::new(4);
        assert_eq!(q.get(&key(2), 3), 0.0);
        assert_eq!(q.max_value(&key(2)), 0.0);
        assert_eq!(q.maximizers(&key(2)), vec![0, 1, 2, 3]);
    }

    #[test]
    fn max_counts_implicit_zero_only_when_row_incomplete() {
        let mut q = QTable::new(2);
        q.set(&key(1), 0, -3.0);
        assert_eq!(q.max_value(&key(1)), 0.0);
        assert_eq!(q.maximizers(&key(1)), vec![1]);
        q.set(&key(1), 1, -1.0);
        assert_eq!(q.max_value(&key(1)), -1.0);
    }

    #[test]
    fn export_then_import() {
        let mut q = QTable::new(6);
        q.set(&key(1), 2, 1.25);
        q.set(&key(1), 5, -0.1);
        q.set(&key(2), 0, 3.0e-7);
        let mut buf = Vec::new();
        q.export(&StateBins::default(), &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("# rate_bins=4 gain_bins=4 zeta_cap=10000000 action_count=6\n"));
        assert!(text.contains("r=0/h=1/d=1\t2\t1.25\n"));
        let (bins, back) = QTable::import(buf.as_slice()).unwrap();
        assert_eq!(bins, StateBins::default());
        assert_eq!(back, q);
    }

    #[test]
    fn import_rejects_garbage() {
        assert!(QTable::import("".as_bytes()).is_err());
        assert!(QTable::import("rate_bins=4\n".as_bytes()).is_err());
        let hdr = "# rate_bins=4 gain_bins=4 zeta_cap=1e7 action_count=2\n";
        assert!(QTable::import(format!("{hdr}r=0/h=0/d=1\t5\t1.0\n").as_bytes()).is_err());
        assert!(QTable::import(format!("{hdr}r=0/h=0/d=1\t1\n").as_bytes()).is_err());
        assert!(QTable::import(format!("{hdr}r=0/h=0/d=1\t1\tNaN\n").as_bytes()).is_err());
        let err = QTable::import(format!("{hdr}\nbogus\t1\t1\n").as_bytes()).unwrap_err();
        assert!(matches!(err, Error::QTableFormat { line: 3, .. }), "{err}");
    }
}
