//! Per-vertex, per-letter slots holding one `u32` each.
//!
//! Small alphabets use a dense `vertices × letters` table. Large ones —
//! typically the basis alphabet of a rebased subgroup, with thousands of
//! letters but a handful of edges per vertex — keep an ordered map of
//! occupied slots per vertex instead.

use std::collections::BTreeMap;

const DENSE_WIDTH: usize = 16;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) enum SlotTable {
    Dense { width: usize, table: Vec<u32> },
    Sparse { width: usize, rows: Vec<BTreeMap<u32, u32>> },
}

impl SlotTable {
    pub(crate) fn new(width: usize, vertices: usize) -> Self {
        if width <= DENSE_WIDTH {
            SlotTable::Dense { width, table: vec![u32::MAX; width * vertices] }
        } else {
            SlotTable::Sparse { width, rows: vec![BTreeMap::new(); vertices] }
        }
    }

    pub(crate) fn vertex_count(&self) -> usize {
        match self {
            SlotTable::Dense { width, table } => table.len() / width.max(&1),
            SlotTable::Sparse { rows, .. } => rows.len(),
        }
    }

    pub(crate) fn get(&self, v: usize, slot: usize) -> Option<u32> {
        match self {
            SlotTable::Dense { width, table } => {
                let t = table[v * width + slot];
                (t != u32::MAX).then_some(t)
            }
            SlotTable::Sparse { rows, .. } => rows[v].get(&(slot as u32)).copied(),
        }
    }

    pub(crate) fn set(&mut self, v: usize, slot: usize, value: u32) {
        match self {
            SlotTable::Dense { width, table } => table[v * *width + slot] = value,
            SlotTable::Sparse { rows, .. } => {
                rows[v].insert(slot as u32, value);
            }
        }
    }

    pub(crate) fn clear(&mut self, v: usize, slot: usize) {
        match self {
            SlotTable::Dense { width, table } => table[v * *width + slot] = u32::MAX,
            SlotTable::Sparse { rows, .. } => {
                rows[v].remove(&(slot as u32));
            }
        }
    }

    /// Occupied slots of `v` in increasing slot order.
    pub(crate) fn row(&self, v: usize) -> Row<'_> {
        match self {
            SlotTable::Dense { width, table } => Row::Dense { cells: &table[v * width..(v + 1) * width], at: 0 },
            SlotTable::Sparse { rows, .. } => Row::Sparse(rows[v].iter()),
        }
    }

    pub(crate) fn occupied(&self, v: usize) -> usize {
        match self {
            SlotTable::Dense { width, table } => {
                table[v * width..(v + 1) * width].iter().filter(|&&t| t != u32::MAX).count()
            }
            SlotTable::Sparse { rows, .. } => rows[v].len(),
        }
    }
}

pub(crate) enum Row<'a> {
    Dense { cells: &'a [u32], at: usize },
    Sparse(std::collections::btree_map::Iter<'a, u32, u32>),
}

impl Iterator for Row<'_> {
    type Item = (usize, u32);

    fn next(&mut self) -> Option<(usize, u32)> {
        match self {
            Row::Dense { cells, at } => {
                while *at < cells.len() {
                    let i = *at;
                    *at += 1;
                    if cells[i] != u32::MAX {
                        return Some((i, cells[i]));
                    }
                }
                None
            }
            Row::Sparse(it) => it.next().map(|(&s, &t)| (s as usize, t)),
        }
    }
}
