//! Runs measures over every eligible variable pair of a dataset, optionally
//! within each level of a grouping factor.

use rayon::prelude::*;

use crate::dataset::{complete_pairs, pair_type_of, Column, Dataset};
use crate::error::{Error, Result};
use crate::measures::ace::ace_correlation;
use crate::measures::cancor::canonical_correlation;
use crate::measures::contingency::{
    concordance_measure, contingency_coef, gk_tau, kendall_w, uncertainty_coef, ConcordanceMethod,
    ContingencyTable,
};
use crate::measures::latent::{polychoric, polyserial};
use crate::measures::mic::{mic, MicParams};
use crate::measures::nmi::max_nmi;
use crate::measures::numeric::{distance_correlation, pearson, rank_correlation, RankMethod};
use crate::measures::Values;
use crate::pairwise::{PairType, PairwiseRow, PairwiseTable, ALL_GROUP};
use crate::registry::{lookup, MethodInfo, SCAGNOSTIC_NAMES};
use crate::scagnostics::scagnostics;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorMethod {
    Pearson,
    Spearman,
    Kendall,
}

impl CorMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            CorMethod::Pearson => "pearson",
            CorMethod::Spearman => "spearman",
            CorMethod::Kendall => "kendall",
        }
    }

    pub fn parse(s: &str) -> Option<CorMethod> {
        match s {
            "pearson" => Some(CorMethod::Pearson),
            "spearman" => Some(CorMethod::Spearman),
            "kendall" => Some(CorMethod::Kendall),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MicStat {
    Mic,
    Tic,
}

impl MicStat {
    pub fn as_str(self) -> &'static str {
        match self {
            MicStat::Mic => "MIC",
            MicStat::Tic => "TIC",
        }
    }

    pub fn parse(s: &str) -> Option<MicStat> {
        match s {
            "MIC" => Some(MicStat::Mic),
            "TIC" => Some(MicStat::Tic),
            _ => None,
        }
    }
}

/// Extra arguments passed through to individual measures.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureOptions {
    pub cor_method: CorMethod,
    pub mic: MicParams,
    pub mic_stats: Vec<MicStat>,
}

impl Default for MeasureOptions {
    fn default() -> Self {
        MeasureOptions {
            cor_method: CorMethod::Pearson,
            mic: MicParams::default(),
            mic_stats: vec![MicStat::Mic],
        }
    }
}

/// A registered measure plus, for `cor`, the correlation flavour.
#[derive(Debug, Clone, Copy)]
struct Measure {
    info: &'static MethodInfo,
    cor: Option<CorMethod>,
}

/// Accepts registry ids (`cor`, `pair_cor`, ...) and the correlation names
/// `pearson`, `spearman`, `kendall` as shorthands for `cor`.
fn resolve(id: &str) -> Result<Measure> {
    if let Some(c) = CorMethod::parse(id) {
        return Ok(Measure {
            info: lookup("cor").expect("cor is registered"),
            cor: Some(c),
        });
    }
    lookup(id)
        .map(|info| Measure { info, cor: None })
        .ok_or_else(|| Error::UnknownMeasure(id.to_string()))
}

impl Measure {
    fn eligible(&self, a: &Column, b: &Column) -> bool {
        let pt = pair_type_of(a, b);
        if !self.info.supports(pt) {
            return false;
        }
        if !self.info.ordinal {
            return true;
        }
        match pt {
            PairType::Ff => a.is_ordered() && b.is_ordered(),
            PairType::Fn => a.is_ordered() || b.is_ordered(),
            PairType::Nn => true,
        }
    }

    fn score_names(&self, opts: &MeasureOptions) -> Vec<String> {
        match self.info.id() {
            "cor" => vec![self.cor.unwrap_or(opts.cor_method).as_str().to_string()],
            "mine" => opts.mic_stats.iter().map(|s| s.as_str().to_string()).collect(),
            "scagnostics" => SCAGNOSTIC_NAMES.iter().map(|s| s.to_string()).collect(),
            id => vec![id.to_string()],
        }
    }

    /// Values in the order of [`Measure::score_names`], on complete data.
    fn evaluate(&self, a: &Column, b: &Column, opts: &MeasureOptions) -> Result<Vec<Option<f64>>> {
        let (va, vb) = (Values::of(a), Values::of(b));
        let names = self.score_names(opts);
        if va.is_empty() {
            return Ok(vec![None; names.len()]);
        }
        let single = |r: Result<Option<f64>>| r.map(|v| vec![v]);
        let numeric = || (a.as_numeric().unwrap(), b.as_numeric().unwrap());
        let codes = || (a.codes().unwrap(), b.codes().unwrap());
        let table = || {
            let (x, y) = codes();
            ContingencyTable::from_codes(x, y)
        };
        let concordance = |m| single(table().map(|t| concordance_measure(&t, m)));
        let out = match self.info.id() {
            "cor" => {
                let (x, y) = numeric();
                single(match self.cor.unwrap_or(opts.cor_method) {
                    CorMethod::Pearson => pearson(x, y),
                    CorMethod::Spearman => rank_correlation(x, y, RankMethod::Spearman),
                    CorMethod::Kendall => rank_correlation(x, y, RankMethod::Kendall),
                })
            }
            "dcor" => {
                let (x, y) = numeric();
                single(distance_correlation(x, y))
            }
            "mine" => {
                let (x, y) = numeric();
                mic(x, y, &opts.mic).map(|s| {
                    opts.mic_stats
                        .iter()
                        .map(|st| {
                            Some(match st {
                                MicStat::Mic => s.mic,
                                MicStat::Tic => s.tic,
                            })
                        })
                        .collect()
                })
            }
            "ace" => single(ace_correlation(va, vb)),
            "cancor" => single(canonical_correlation(va, vb)),
            "nmi" => single(max_nmi(va, vb)),
            "polychor" => {
                let (x, y) = codes();
                single(polychoric(x, y))
            }
            "polyserial" => {
                let (f, n) = if a.is_factor() { (a, b) } else { (b, a) };
                single(polyserial(f.codes().unwrap(), n.as_numeric().unwrap()))
            }
            "tauA" => concordance(ConcordanceMethod::TauA),
            "tauB" => concordance(ConcordanceMethod::TauB),
            "tauC" => concordance(ConcordanceMethod::TauC),
            "gkGamma" => concordance(ConcordanceMethod::GkGamma),
            "tauW" => {
                let (x, y) = codes();
                single(kendall_w(x, y))
            }
            "gkTau" => single(table().map(|t| gk_tau(&t))),
            "uncertainty" => single(table().map(|t| uncertainty_coef(&t))),
            "chi" => single(table().map(|t| contingency_coef(&t))),
            "scagnostics" => {
                let (x, y) = numeric();
                scagnostics(x, y).map(|s| s.named().iter().map(|p| p.1).collect())
            }
            other => Err(Error::UnknownMeasure(other.to_string())),
        };
        match out {
            Err(Error::TooFewObservations { .. } | Error::EmptyInput) => Ok(vec![None; names.len()]),
            other => other,
        }
    }
}

/// Measure ids for each pair-type slot of [`pairwise_scores`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScoreControl {
    pub nn: String,
    pub fn_: String,
    pub ff: String,
    /// Used instead of `ff` when both factors are ordered.
    pub oo: String,
}

impl Default for ScoreControl {
    fn default() -> Self {
        ScoreControl {
            nn: "pearson".into(),
            fn_: "cancor".into(),
            ff: "cancor".into(),
            oo: "polychor".into(),
        }
    }
}

impl ScoreControl {
    fn slots(&self) -> Result<[Measure; 4]> {
        let check = |id: &str, pt: PairType| -> Result<Measure> {
            let m = resolve(id)?;
            if !m.info.supports(pt) {
                return Err(Error::IneligibleSlot {
                    measure: id.to_string(),
                    pair_type: pt.to_string(),
                });
            }
            Ok(m)
        };
        Ok([
            check(&self.nn, PairType::Nn)?,
            check(&self.fn_, PairType::Fn)?,
            check(&self.ff, PairType::Ff)?,
            check(&self.oo, PairType::Ff)?,
        ])
    }

    pub fn validate(&self) -> Result<()> {
        self.slots().map(|_| ())
    }
}

/// The datasets to score, labelled by group.
fn subsets(d: &Dataset, by: Option<&str>, ungrouped: bool) -> Result<Vec<(String, Dataset)>> {
    let Some(by) = by else {
        return Ok(vec![(ALL_GROUP.to_string(), d.clone())]);
    };
    let col = d.column(by).ok_or_else(|| Error::ColumnNotFound(by.to_string()))?;
    let (Some(levels), Some(codes)) = (col.levels(), col.codes()) else {
        return Err(Error::NotAFactor(by.to_string()));
    };
    if levels.iter().any(|l| l == ALL_GROUP) {
        return Err(Error::ReservedGroup);
    }
    let rest = d.without(by);
    let mut out: Vec<(String, Dataset)> = levels
        .iter()
        .enumerate()
        .map(|(k, level)| {
            let idx: Vec<usize> = (0..d.n_rows())
                .filter(|&i| !col.missing()[i] && codes[i] == k)
                .collect();
            (level.clone(), rest.take_rows(&idx))
        })
        .collect();
    if ungrouped {
        out.push((ALL_GROUP.to_string(), rest));
    }
    Ok(out)
}

/// Scores every pair of every subset with the measure `choose` assigns it.
fn run(
    sets: &[(String, Dataset)],
    opts: &MeasureOptions,
    choose: impl Fn(&Column, &Column) -> Option<Measure> + Sync,
) -> Result<PairwiseTable> {
    let mut tasks = Vec::new();
    for (s, (_, data)) in sets.iter().enumerate() {
        let p = data.columns().len();
        for i in 0..p {
            for j in (i + 1)..p {
                if let Some(m) = choose(&data.columns()[i], &data.columns()[j]) {
                    tasks.push((s, i, j, m));
                }
            }
        }
    }
    let rows: Vec<Vec<PairwiseRow>> = tasks
        .par_iter()
        .map(|&(s, i, j, m)| -> Result<Vec<PairwiseRow>> {
            let (group, data) = &sets[s];
            let (a, b) = (&data.columns()[i], &data.columns()[j]);
            let pt = pair_type_of(a, b);
            let (ca, cb) = complete_pairs(a, b);
            let values = m.evaluate(&ca, &cb, opts)?;
            Ok(m.score_names(opts)
                .into_iter()
                .zip(values)
                .map(|(score, v)| PairwiseRow::new(a.name(), b.name(), &score, group, v, pt))
                .collect())
        })
        .collect::<Result<_>>()?;
    PairwiseTable::new(rows.into_iter().flatten().collect())
}

/// One measure over all eligible pairs (pairwise-complete observations).
pub fn apply_measure(d: &Dataset, measure: &str, opts: &MeasureOptions) -> Result<PairwiseTable> {
    pairwise_by(d, None, measure, true, opts)
}

/// Row-wise union of several measures.
pub fn pairwise_multi(d: &Dataset, measures: &[&str], opts: &MeasureOptions) -> Result<PairwiseTable> {
    if measures.is_empty() {
        return Err(Error::InvalidParameter("no measures given".into()));
    }
    let tables = measures
        .iter()
        .map(|m| apply_measure(d, m, opts))
        .collect::<Result<Vec<_>>>()?;
    PairwiseTable::concat(tables)
}

/// One measure within each level of the factor `by`, plus the ungrouped
/// scores when `ungrouped` is set. Levels without rows give missing values.
pub fn pairwise_by(
    d: &Dataset,
    by: Option<&str>,
    measure: &str,
    ungrouped: bool,
    opts: &MeasureOptions,
) -> Result<PairwiseTable> {
    let m = resolve(measure)?;
    let sets = subsets(d, by, ungrouped)?;
    run(&sets, opts, |a, b| m.eligible(a, b).then_some(m))
}

/// Scores each pair with the measure of its type slot in `control`.
pub fn pairwise_scores(
    d: &Dataset,
    control: &ScoreControl,
    by: Option<&str>,
    ungrouped: bool,
    opts: &MeasureOptions,
) -> Result<PairwiseTable> {
    let [nn, fn_, ff, oo] = control.slots()?;
    let sets = subsets(d, by, ungrouped)?;
    run(&sets, opts, |a, b| {
        let m = match pair_type_of(a, b) {
            PairType::Nn => nn,
            PairType::Fn => fn_,
            PairType::Ff if a.is_ordered() && b.is_ordered() => oo,
            PairType::Ff => ff,
        };
        m.eligible(a, b).then_some(m)
    })
}
