//! Variable and pair orderings that bring strong (or strongly varying)
//! associations to the front.

use std::collections::BTreeMap;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::pairwise::PairwiseTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SummaryMode {
    /// Largest absolute value over the pair's rows.
    MaxAbs,
    /// Largest minus smallest value over the pair's rows.
    MaxDiff,
}

/// Named orderings accepted by the plots.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderName {
    SeriateMaxAbs,
    SeriateMaxDiff,
    /// Keep the table's own (alphabetical) order.
    None,
}

impl OrderName {
    pub fn mode(self) -> Option<SummaryMode> {
        match self {
            OrderName::SeriateMaxAbs => Some(SummaryMode::MaxAbs),
            OrderName::SeriateMaxDiff => Some(SummaryMode::MaxDiff),
            OrderName::None => None,
        }
    }
}

impl FromStr for OrderName {
    type Err = Error;
    fn from_str(s: &str) -> Result<OrderName> {
        match s {
            "seriate_max_abs" => Ok(OrderName::SeriateMaxAbs),
            "seriate_max_diff" => Ok(OrderName::SeriateMaxDiff),
            "none" => Ok(OrderName::None),
            other => Err(Error::UnknownOrder(other.to_string())),
        }
    }
}

/// Summary per `(x, y)` pair; pairs whose values are all missing get 0.
pub fn pair_summary(t: &PairwiseTable, mode: SummaryMode) -> BTreeMap<(String, String), f64> {
    t.pair_slices()
        .into_iter()
        .map(|rows| {
            let vals: Vec<f64> = rows.iter().filter_map(|r| r.value).collect();
            let s = if vals.is_empty() {
                0.0
            } else {
                match mode {
                    SummaryMode::MaxAbs => vals.iter().fold(0.0f64, |m, v| m.max(v.abs())),
                    SummaryMode::MaxDiff => {
                        let hi = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                        let lo = vals.iter().copied().fold(f64::INFINITY, f64::min);
                        hi - lo
                    }
                }
            };
            ((rows[0].x.clone(), rows[0].y.clone()), s)
        })
        .collect()
}

/// Pairs by descending summary, ties by `(x, y)`.
pub fn order_pairs_linear(t: &PairwiseTable, mode: SummaryMode) -> Vec<(String, String)> {
    let mut pairs: Vec<((String, String), f64)> = pair_summary(t, mode).into_iter().collect();
    pairs.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    pairs.into_iter().map(|p| p.0).collect()
}

/// Dissimilarity matrix `1 - s / max s` over `vars`; absent pairs get 1.
pub fn dissimilarities(t: &PairwiseTable, vars: &[String], mode: SummaryMode) -> Vec<Vec<f64>> {
    let summary = pair_summary(t, mode);
    let max = summary.values().copied().fold(0.0f64, f64::max);
    let k = vars.len();
    let mut d = vec![vec![0.0; k]; k];
    for i in 0..k {
        for j in (i + 1)..k {
            let (a, b) = if vars[i] < vars[j] { (i, j) } else { (j, i) };
            let s = summary.get(&(vars[a].clone(), vars[b].clone())).copied();
            let v = match s {
                Some(s) if max > 0.0 => 1.0 - s / max,
                _ => 1.0,
            };
            d[i][j] = v;
            d[j][i] = v;
        }
    }
    d
}

#[derive(Debug, Clone, PartialEq)]
pub enum Dendrogram {
    Leaf(usize),
    Merge {
        left: Box<Dendrogram>,
        right: Box<Dendrogram>,
        height: f64,
    },
}

impl Dendrogram {
    pub fn leaves(&self) -> Vec<usize> {
        match self {
            Dendrogram::Leaf(i) => vec![*i],
            Dendrogram::Merge { left, right, .. } => {
                let mut v = left.leaves();
                v.extend(right.leaves());
                v
            }
        }
    }

    pub fn height(&self) -> f64 {
        match self {
            Dendrogram::Leaf(_) => 0.0,
            Dendrogram::Merge { height, .. } => *height,
        }
    }

    fn internal_nodes(&self) -> usize {
        match self {
            Dendrogram::Leaf(_) => 0,
            Dendrogram::Merge { left, right, .. } => 1 + left.internal_nodes() + right.internal_nodes(),
        }
    }

    /// Leaf order with internal node `n` (pre-order numbering) flipped
    /// when bit `n` of `flips` is set.
    fn order_with(&self, flips: u64, counter: &mut u32, out: &mut Vec<usize>) {
        match self {
            Dendrogram::Leaf(i) => out.push(*i),
            Dendrogram::Merge { left, right, .. } => {
                let flip = flips >> *counter & 1 == 1;
                *counter += 1;
                // number the subtrees identically regardless of the flip
                let mut a = Vec::new();
                left.order_with(flips, counter, &mut a);
                let mut b = Vec::new();
                right.order_with(flips, counter, &mut b);
                if flip {
                    out.extend(b);
                    out.extend(a);
                } else {
                    out.extend(a);
                    out.extend(b);
                }
            }
        }
    }

    /// All leaf orders obtainable by flipping internal nodes.
    pub fn consistent_orders(&self) -> Vec<Vec<usize>> {
        let m = self.internal_nodes();
        (0..1u64 << m)
            .map(|flips| {
                let mut out = Vec::new();
                self.order_with(flips, &mut 0, &mut out);
                out
            })
            .collect()
    }
}

/// Average-linkage agglomerative clustering; ties merge the pair of
/// clusters with the smallest leaf indices first.
pub fn average_linkage(d: &[Vec<f64>]) -> Dendrogram {
    let k = d.len();
    assert!(k > 0, "clustering needs at least one item");
    let mut clusters: Vec<(Dendrogram, Vec<usize>)> = (0..k).map(|i| (Dendrogram::Leaf(i), vec![i])).collect();
    let dist = |a: &[usize], b: &[usize]| -> f64 {
        let s: f64 = a.iter().flat_map(|&i| b.iter().map(move |&j| d[i][j])).sum();
        s / (a.len() * b.len()) as f64
    };
    while clusters.len() > 1 {
        let mut best = (f64::INFINITY, 0, 0);
        for i in 0..clusters.len() {
            for j in (i + 1)..clusters.len() {
                let v = dist(&clusters[i].1, &clusters[j].1);
                if v < best.0 - 1e-12 {
                    best = (v, i, j);
                }
            }
        }
        let (h, i, j) = best;
        let (right, rm) = clusters.remove(j);
        let (left, lm) = clusters.remove(i);
        let height = h.max(left.height()).max(right.height());
        let mut members = lm;
        members.extend(rm);
        members.sort_unstable();
        let node = Dendrogram::Merge {
            left: Box::new(left),
            right: Box::new(right),
            height,
        };
        clusters.insert(i, (node, members));
    }
    clusters.pop().unwrap().0
}

/// Lazy path length: early steps weigh more, `Σ (k - 1 - i) d(o_i, o_{i+1})`.
pub fn lazy_path_length(order: &[usize], d: &[Vec<f64>]) -> f64 {
    let k = order.len();
    order
        .windows(2)
        .enumerate()
        .map(|(i, w)| (k - 1 - i) as f64 * d[w[0]][w[1]])
        .sum()
}

/// Exhaustive search is used up to this many variables.
pub const EXACT_LIMIT: usize = 12;

const LPL_EPS: f64 = 1e-12;

fn better(a: (&[usize], f64), b: (&[usize], f64), names: &[String]) -> bool {
    if a.1 < b.1 - LPL_EPS {
        return true;
    }
    if a.1 > b.1 + LPL_EPS {
        return false;
    }
    let key = |o: &[usize]| o.iter().map(|&i| names[i].as_str()).collect::<Vec<_>>();
    key(a.0) < key(b.0)
}

/// Greedy orientation: at each merge keep the best of the four
/// arrangements of the (possibly reversed) child orders.
fn greedy_order(node: &Dendrogram, d: &[Vec<f64>], names: &[String]) -> Vec<usize> {
    match node {
        Dendrogram::Leaf(i) => vec![*i],
        Dendrogram::Merge { left, right, .. } => {
            let l = greedy_order(left, d, names);
            let r = greedy_order(right, d, names);
            let rev = |v: &[usize]| v.iter().rev().copied().collect::<Vec<_>>();
            let mut best: Option<(Vec<usize>, f64)> = None;
            for a in [l.clone(), rev(&l)] {
                for b in [r.clone(), rev(&r)] {
                    let mut o = a.clone();
                    o.extend(&b);
                    let v = lazy_path_length(&o, d);
                    if best.as_ref().is_none_or(|(bo, bv)| better((&o, v), (bo, *bv), names)) {
                        best = Some((o, v));
                    }
                }
            }
            best.unwrap().0
        }
    }
}

/// Index order over `names` minimising lazy path length among the leaf
/// orders of the average-linkage dendrogram; the identity and reversed
/// orders are also candidates so the result never does worse than either.
pub fn seriate_indices(d: &[Vec<f64>], names: &[String]) -> Vec<usize> {
    let k = d.len();
    if k <= 1 {
        return (0..k).collect();
    }
    let tree = average_linkage(d);
    let mut candidates = if k <= EXACT_LIMIT {
        tree.consistent_orders()
    } else {
        let g = greedy_order(&tree, d, names);
        let r: Vec<usize> = g.iter().rev().copied().collect();
        vec![g, r]
    };
    candidates.push((0..k).collect());
    candidates.push((0..k).rev().collect());
    let mut best: Option<(Vec<usize>, f64)> = None;
    for o in candidates {
        let v = lazy_path_length(&o, d);
        if best.as_ref().is_none_or(|(bo, bv)| better((&o, v), (bo, *bv), names)) {
            best = Some((o, v));
        }
    }
    best.unwrap().0
}

/// Variable order for the matrix display.
pub fn seriate_variables(t: &PairwiseTable, mode: SummaryMode) -> Vec<String> {
    let vars = t.variables();
    let d = dissimilarities(t, &vars, mode);
    seriate_indices(&d, &vars).into_iter().map(|i| vars[i].clone()).collect()
}

/// Applies an [`OrderName`] to the variables of `t`.
pub fn order_variables(t: &PairwiseTable, order: OrderName) -> Vec<String> {
    match order.mode() {
        Some(mode) => seriate_variables(t, mode),
        None => t.variables(),
    }
}

/// Applies an [`OrderName`] to the pairs of `t`; `none` keeps table order.
pub fn order_pairs(t: &PairwiseTable, order: OrderName) -> Vec<(String, String)> {
    match order.mode() {
        Some(mode) => order_pairs_linear(t, mode),
        None => t.pairs(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairwise::{PairType, PairwiseRow};
    use approx::assert_abs_diff_eq;

    fn row(x: &str, y: &str, g: &str, v: Option<f64>) -> PairwiseRow {
        PairwiseRow::new(x, y, "pearson", g, v, PairType::Nn)
    }

    #[test]
    fn max_diff_of_groups() {
        let t = PairwiseTable::new(vec![
            row("bill_dep", "bill_len", "Adelie", Some(0.391)),
            row("bill_dep", "bill_len", "Chinstrap", Some(0.654)),
            row("bill_dep", "bill_len", "Gentoo", Some(0.643)),
            row("bill_dep", "bill_len", "all", Some(-0.235)),
        ])
        .unwrap();
        let s = pair_summary(&t, SummaryMode::MaxDiff);
        assert_abs_diff_eq!(s[&("bill_dep".into(), "bill_len".into())], 0.889, epsilon = 1e-12);
        let s = pair_summary(&t, SummaryMode::MaxAbs);
        assert_abs_diff_eq!(s[&("bill_dep".into(), "bill_len".into())], 0.654, epsilon = 1e-12);
    }

    #[test]
    fn all_missing_is_zero() {
        let t = PairwiseTable::new(vec![row("a", "b", "all", None)]).unwrap();
        assert_eq!(pair_summary(&t, SummaryMode::MaxAbs)[&("a".into(), "b".into())], 0.0);
    }

    #[test]
    fn two_variables() {
        let t = PairwiseTable::new(vec![row("b", "a", "all", Some(0.5))]).unwrap();
        assert_eq!(seriate_variables(&t, SummaryMode::MaxAbs), vec!["a", "b"]);
    }

    #[test]
    fn tied_pairs_alphabetical() {
        let t = PairwiseTable::new(vec![
            row("c", "d", "all", Some(0.5)),
            row("a", "b", "all", Some(0.5)),
            row("a", "c", "all", Some(0.9)),
        ])
        .unwrap();
        let o = order_pairs_linear(&t, SummaryMode::MaxAbs);
        let o: Vec<(&str, &str)> = o.iter().map(|(x, y)| (x.as_str(), y.as_str())).collect();
        assert_eq!(o, vec![("a", "c"), ("a", "b"), ("c", "d")]);
    }

    #[test]
    fn dendrogram_orders_count() {
        let d = vec![
            vec![0.0, 0.1, 0.8, 0.9],
            vec![0.1, 0.0, 0.7, 0.9],
            vec![0.8, 0.7, 0.0, 0.2],
            vec![0.9, 0.9, 0.2, 0.0],
        ];
        let tree = average_linkage(&d);
        let orders = tree.consistent_orders();
        assert_eq!(orders.len(), 8);
        for o in &orders {
            let mut s = o.clone();
            s.sort();
            assert_eq!(s, vec![0, 1, 2, 3]);
        }
    }

    #[test]
    fn order_names() {
        assert_eq!("seriate_max_diff".parse::<OrderName>().unwrap(), OrderName::SeriateMaxDiff);
        assert!(matches!("nope".parse::<OrderName>(), Err(Error::UnknownOrder(_))));
    }
}
