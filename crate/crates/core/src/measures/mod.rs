//! Individual association measures on complete (missing-free) data.

pub mod ace;
pub mod bvn;
pub mod cancor;
pub mod contingency;
pub mod latent;
pub mod mic;
pub mod nmi;
pub mod numeric;

use crate::dataset::{Column, ColumnData};

/// Borrowed view of one variable: numeric values or factor level codes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Values<'a> {
    Numeric(&'a [f64]),
    Factor(&'a [usize]),
}

impl<'a> Values<'a> {
    pub fn of(column: &'a Column) -> Values<'a> {
        match column.data() {
            ColumnData::Numeric(v) => Values::Numeric(v),
            ColumnData::Factor { codes, .. } => Values::Factor(codes),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Values::Numeric(v) => v.len(),
            Values::Factor(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Maps codes to `0..k` preserving order; returns the new codes and `k`.
pub(crate) fn compact(codes: &[usize]) -> (Vec<usize>, usize) {
    let mut seen = codes.to_vec();
    seen.sort_unstable();
    seen.dedup();
    let out = codes.iter().map(|c| seen.binary_search(c).unwrap()).collect();
    (out, seen.len())
}
