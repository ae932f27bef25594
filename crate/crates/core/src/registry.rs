//! Catalogue of the available measures and the ranges of the scores they emit.

use crate::pairwise::PairType;

/// Closed interval a score is guaranteed to fall in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScoreRange {
    /// `[-1, 1]`
    Signed,
    /// `[0, 1]`
    Unit,
}

impl ScoreRange {
    pub fn bounds(self) -> (f64, f64) {
        match self {
            ScoreRange::Signed => (-1.0, 1.0),
            ScoreRange::Unit => (0.0, 1.0),
        }
    }

    pub fn contains(self, v: f64) -> bool {
        let (lo, hi) = self.bounds();
        v >= lo && v <= hi
    }

    pub fn label(self) -> &'static str {
        match self {
            ScoreRange::Signed => "[-1,1]",
            ScoreRange::Unit => "[0,1]",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MethodInfo {
    pub name: &'static str,
    pub description: &'static str,
    pub nn: bool,
    pub ff: bool,
    pub fn_: bool,
    pub from: &'static str,
    pub range: ScoreRange,
    pub ordinal: bool,
}

impl MethodInfo {
    pub fn supports(&self, pt: PairType) -> bool {
        match pt {
            PairType::Nn => self.nn,
            PairType::Ff => self.ff,
            PairType::Fn => self.fn_,
        }
    }

    /// Measure id without the `pair_` prefix.
    pub fn id(&self) -> &'static str {
        self.name.trim_start_matches("pair_")
    }
}

const fn m(
    name: &'static str,
    description: &'static str,
    flags: (bool, bool, bool),
    from: &'static str,
    range: ScoreRange,
    ordinal: bool,
) -> MethodInfo {
    MethodInfo {
        name,
        description,
        nn: flags.0,
        ff: flags.1,
        fn_: flags.2,
        from,
        range,
        ordinal,
    }
}

use ScoreRange::{Signed, Unit};

static METHODS: [MethodInfo; 17] = [
    m("pair_cor", "Pearson/Spearman/Kendall", (true, false, false), "measures::numeric::pearson", Signed, false),
    m("pair_dcor", "Distance correlation", (true, false, false), "measures::numeric::distance_correlation", Unit, false),
    m("pair_mine", "MIC and other measures", (true, false, false), "measures::mic::mic", Unit, false),
    m("pair_ace", "Ace correlation", (true, true, true), "measures::ace::ace_correlation", Unit, false),
    m("pair_cancor", "Canonical correlation", (true, true, true), "measures::cancor::canonical_correlation", Unit, false),
    m("pair_nmi", "MIC", (true, true, true), "measures::nmi::max_nmi", Unit, false),
    m("pair_polychor", "Polychoric correlation", (false, true, false), "measures::latent::polychoric", Signed, true),
    m("pair_polyserial", "Polyserial correlation", (false, false, true), "measures::latent::polyserial", Signed, true),
    m("pair_tauA", "Kendall's tau A", (false, true, false), "measures::contingency::concordance_measure", Signed, true),
    m("pair_tauB", "Kendall's tau B", (false, true, false), "measures::contingency::concordance_measure", Signed, true),
    m("pair_tauC", "Stuart-Kendall Tau-C", (false, true, false), "measures::contingency::concordance_measure", Signed, true),
    m("pair_tauW", "Kendall's W", (false, true, false), "measures::contingency::kendall_w", Signed, true),
    m("pair_gkGamma", "Goodman-Kruskal Gamma", (false, true, false), "measures::contingency::concordance_measure", Signed, true),
    m("pair_gkTau", "Goodman-Kruskal tau", (false, true, false), "measures::contingency::gk_tau", Unit, true),
    m("pair_uncertainty", "Uncertainty coefficient", (false, true, false), "measures::contingency::uncertainty_coef", Unit, false),
    m("pair_chi", "Pearson's contingency coefficient", (false, true, false), "measures::contingency::contingency_coef", Unit, false),
    m("pair_scagnostics", "Scagnostics", (true, false, false), "scagnostics::scagnostics", Unit, false),
];

/// All registered measures, in catalogue order.
pub fn methods() -> &'static [MethodInfo] {
    &METHODS
}

/// Looks a measure up by `pair_xx` name or bare id.
pub fn lookup(name: &str) -> Option<&'static MethodInfo> {
    let id = name.trim_start_matches("pair_");
    METHODS.iter().find(|m| m.id() == id)
}

/// Names of the nine scagnostic scores, in output order.
pub const SCAGNOSTIC_NAMES: [&str; 9] = [
    "outlying",
    "skewed",
    "clumpy",
    "sparse",
    "striated",
    "convex",
    "skinny",
    "stringy",
    "monotonic",
];

/// Registered range of a score identifier as it appears in a table row.
/// Unknown names return `None`.
pub fn score_range(score: &str) -> Option<ScoreRange> {
    let r = match score {
        "pearson" | "spearman" | "kendall" => Signed,
        "dcor" | "MIC" | "TIC" | "ace" | "cancor" | "nmi" => Unit,
        "polychor" | "polyserial" | "tauA" | "tauB" | "tauC" | "tauW" | "gkGamma" => Signed,
        "gkTau" | "uncertainty" | "chi" => Unit,
        s if SCAGNOSTIC_NAMES.contains(&s) => Unit,
        _ => return None,
    };
    Some(r)
}

/// Filters the catalogue. Each token is one of `nn`, `ff`, `fn`, `ordinal`;
/// a method is kept when it has every requested flag.
pub fn filter_methods(tokens: &[&str]) -> Result<Vec<&'static MethodInfo>, String> {
    let mut out = Vec::new();
    for m in METHODS.iter() {
        let mut keep = true;
        for t in tokens {
            keep &= match t.trim() {
                "nn" => m.nn,
                "ff" => m.ff,
                "fn" => m.fn_,
                "ordinal" => m.ordinal,
                "" => true,
                other => return Err(format!("unknown method flag `{other}`")),
            };
        }
        if keep {
            out.push(m);
        }
    }
    Ok(out)
}
