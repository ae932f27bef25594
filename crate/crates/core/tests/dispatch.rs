mod common;

use pairscore::measures::contingency::{
    concordance_measure, gk_tau, uncertainty_coef, ConcordanceMethod, ContingencyTable,
};
use pairscore::{
    apply_measure, pairwise_by, pairwise_multi, pairwise_scores, Column, Dataset, Error, MeasureOptions, PairType,
    ScoreControl, ALL_GROUP,
};

use common::penguins;

#[test]
fn group_rows_equal_subset_scores() {
    let d = penguins();
    let opts = MeasureOptions::default();
    let t = pairwise_by(&d, Some("species"), "cor", true, &opts).unwrap();
    let species = d.column("species").unwrap();
    let codes = species.codes().unwrap();
    for (level, name) in species.levels().unwrap().iter().enumerate() {
        let idx: Vec<usize> =
            (0..d.n_rows()).filter(|&i| !species.missing()[i] && codes[i] == level).collect();
        let sub = apply_measure(&d.take_rows(&idx).without("species"), "cor", &opts).unwrap();
        for r in sub.rows() {
            let g = t
                .rows()
                .iter()
                .find(|g| g.x == r.x && g.y == r.y && g.score == r.score && &g.group == name)
                .unwrap();
            assert_eq!(g.value, r.value, "{} {} {}", r.x, r.y, name);
        }
    }
}

#[test]
fn deterministic_across_runs() {
    let d = penguins();
    let opts = MeasureOptions::default();
    let a = pairwise_scores(&d, &ScoreControl::default(), Some("species"), true, &opts).unwrap();
    let b = pairwise_scores(&d, &ScoreControl::default(), Some("species"), true, &opts).unwrap();
    assert_eq!(a.to_csv_string(), b.to_csv_string());
}

#[test]
fn row_count_law() {
    // pairs × scores × (levels + 1) when ungrouped rows are kept
    let d = penguins();
    let opts = MeasureOptions::default();
    let t = pairwise_by(&d, Some("species"), "cor", true, &opts).unwrap();
    assert_eq!(t.len(), 10 * 4);
    let t = pairwise_by(&d, Some("species"), "cor", false, &opts).unwrap();
    assert_eq!(t.len(), 10 * 3);
    assert!(t.rows().iter().all(|r| r.group != ALL_GROUP));
}

#[test]
fn multi_is_union() {
    let d = penguins();
    let opts = MeasureOptions::default();
    let multi = pairwise_multi(&d, &["dcor", "cancor"], &opts).unwrap();
    let a = apply_measure(&d, "dcor", &opts).unwrap();
    let b = apply_measure(&d, "cancor", &opts).unwrap();
    assert_eq!(multi.len(), a.len() + b.len());
    assert!(matches!(pairwise_multi(&d, &[], &opts), Err(Error::InvalidParameter(_))));
}

#[test]
fn unknown_measure_and_ineligible_slot() {
    let d = penguins();
    let opts = MeasureOptions::default();
    assert!(matches!(apply_measure(&d, "nope", &opts), Err(Error::UnknownMeasure(_))));
    let control = ScoreControl { nn: "polychor".into(), ..Default::default() };
    assert!(matches!(
        pairwise_scores(&d, &control, None, true, &opts),
        Err(Error::IneligibleSlot { .. })
    ));
}

#[test]
fn empty_level_gives_missing_rows() {
    let d = Dataset::new(vec![
        Column::from_f64("a", &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]),
        Column::from_f64("b", &[2.0, 1.0, 4.0, 3.0, 6.0, 5.0]),
        Column::factor(
            "g",
            vec![Some(0), Some(0), Some(0), Some(1), Some(1), Some(1)],
            vec!["p".into(), "q".into(), "unused".into()],
            false,
        ),
    ])
    .unwrap();
    let t = pairwise_by(&d, Some("g"), "cor", true, &MeasureOptions::default()).unwrap();
    let groups: Vec<&str> = t.rows().iter().map(|r| r.group.as_str()).collect();
    assert_eq!(groups, ["p", "q", "unused", "all"]);
    assert_eq!(t.rows()[2].value, None);
}

#[test]
fn ordinal_slot_used_for_ordered_pairs() {
    let lv = |k: usize| (0..k).map(|i| format!("l{i}")).collect::<Vec<_>>();
    let a: Vec<Option<usize>> = (0..30).map(|i| Some(i % 3)).collect();
    let b: Vec<Option<usize>> = (0..30).map(|i| Some((i / 2) % 3)).collect();
    let d = Dataset::new(vec![
        Column::factor("a", a.clone(), lv(3), true),
        Column::factor("b", b.clone(), lv(3), true),
        Column::factor("c", b, lv(3), false),
    ])
    .unwrap();
    let t = pairwise_scores(&d, &ScoreControl::default(), None, true, &MeasureOptions::default()).unwrap();
    let score = |x: &str, y: &str| t.rows().iter().find(|r| r.x == x && r.y == y).unwrap().score.clone();
    assert_eq!(score("a", "b"), "polychor");
    assert_eq!(score("a", "c"), "cancor");
    assert!(t.rows().iter().all(|r| r.pair_type == PairType::Ff));
}

// every measure on [[2,1],[1,2]] against hand enumeration of its six observations
#[test]
fn two_by_two_enumeration() {
    let t = ContingencyTable::from_counts(vec![vec![2, 1], vec![1, 2]]).unwrap();
    let obs = [(0, 0), (0, 0), (0, 1), (1, 0), (1, 1), (1, 1)];
    let (mut c, mut dd, mut tx, mut ty) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for i in 0..obs.len() {
        for j in (i + 1)..obs.len() {
            let s: i32 = (obs[i].0 - obs[j].0) * (obs[i].1 - obs[j].1);
            match s.signum() {
                1 => c += 1.0,
                -1 => dd += 1.0,
                _ => {
                    if obs[i].0 == obs[j].0 && obs[i].1 != obs[j].1 {
                        tx += 1.0;
                    }
                    if obs[i].1 == obs[j].1 && obs[i].0 != obs[j].0 {
                        ty += 1.0;
                    }
                }
            }
        }
    }
    let n0 = 15.0;
    let tau_a = (c - dd) / n0;
    let tau_b = (c - dd) / ((c + dd + tx) * (c + dd + ty)).sqrt();
    let tau_c = 2.0 * 2.0 * (c - dd) / (36.0 * 1.0);
    let gamma = (c - dd) / (c + dd);
    let eps = 1e-12;
    assert!((concordance_measure(&t, ConcordanceMethod::TauA).unwrap() - tau_a).abs() < eps);
    assert!((concordance_measure(&t, ConcordanceMethod::TauB).unwrap() - tau_b).abs() < eps);
    assert!((concordance_measure(&t, ConcordanceMethod::TauC).unwrap() - tau_c).abs() < eps);
    assert!((concordance_measure(&t, ConcordanceMethod::GkGamma).unwrap() - gamma).abs() < eps);

    // proportional reduction in classification error, either direction
    let p: [[f64; 2]; 2] = [[2.0 / 6.0, 1.0 / 6.0], [1.0 / 6.0, 2.0 / 6.0]];
    let gini_y = 1.0 - 0.5f64.powi(2) * 2.0;
    let cond: f64 = (0..2)
        .map(|i| {
            let row = p[i][0] + p[i][1];
            row * (1.0 - (p[i][0] / row).powi(2) - (p[i][1] / row).powi(2))
        })
        .sum();
    let tau = (gini_y - cond) / gini_y;
    assert!((gk_tau(&t).unwrap() - tau).abs() < eps);

    let h = |ps: &[f64]| -ps.iter().map(|p| p * p.ln()).sum::<f64>();
    let hx = h(&[0.5, 0.5]);
    let hxy = h(&[p[0][0], p[0][1], p[1][0], p[1][1]]);
    let u = (2.0 * hx - hxy) / hx;
    assert!((uncertainty_coef(&t).unwrap() - u).abs() < eps);
}
