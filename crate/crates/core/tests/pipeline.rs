use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};

use indexmap::IndexMap;
use proptest::prelude::*;

use dslf_core::credibility::Panel;
use dslf_core::group::GroupAssessment;
use dslf_core::io::{self, Format, Stage};
use dslf_core::pipeline::Degeneracy;
use dslf_core::{evaluate_all, evaluate_round, EvaluationConfig, Ifn, RoundInput};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn paper_rounds() -> Vec<RoundInput> {
    io::parse_judgments(&fs::read(fixture("paper_rounds.json")).unwrap()).unwrap()
}

fn labels(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

#[test]
fn bundled_rounds_have_expected_shapes() {
    let rounds = paper_rounds();
    let shapes: Vec<(usize, usize, usize)> = rounds
        .iter()
        .map(|r| {
            (
                r.alternatives.len(),
                r.expert_labels.len(),
                r.criteria_labels.len(),
            )
        })
        .collect();
    assert_eq!(shapes, [(5, 3, 5), (4, 3, 6), (6, 3, 5)]);
    assert!(!rounds[1].alternatives.contains_key("Supplier_3"));

    for (i, name) in ["round1.json", "round2.json", "round3.json"]
        .iter()
        .enumerate()
    {
        let single = io::parse_judgments(&fs::read(fixture(name)).unwrap()).unwrap();
        assert_eq!(single, [rounds[i].clone()]);
    }
}

#[test]
fn rounds_one_and_three_match_published_rankings() {
    let config = EvaluationConfig::default();
    for r in [&paper_rounds()[0], &paper_rounds()[2]] {
        let report = evaluate_round(r, &config).unwrap();
        assert_eq!(Some(&report.ranking.order), r.reference_ranking.as_ref());
    }
}

#[test]
fn round_one_report_carries_published_intermediates() {
    let report = evaluate_round(&paper_rounds()[0], &EvaluationConfig::default()).unwrap();
    let s1 = report.alternative("Supplier_1").unwrap();
    let e1 = &s1.experts[0];
    assert!((e1.z[0].reliability - 0.64).abs() < 1e-12);
    assert!((e1.distances.get(0, 1) - 0.2442).abs() < 1e-4);
    assert!((e1.similarity.as_ref().unwrap()[0] - 7.7485).abs() < 2e-3);
    assert_eq!(e1.points, [4, 0, 1, 3, 2]);
    assert!((s1.info_volume.raw[0] - 8.5376).abs() < 1e-4);
    assert!((s1.info_volume.normalized[2] - 0.4303).abs() < 1e-4);

    let s4 = report.alternative("Supplier_4").unwrap();
    let top = report
        .alternatives
        .iter()
        .map(|a| a.gross_estimation)
        .fold(f64::NEG_INFINITY, f64::max);
    assert_eq!(s4.gross_estimation, top);
    assert!(report.degeneracies.is_empty());
}

/// The published credibilities of rounds 1 and 3 are matched closely by the
/// default floor.
#[test]
fn default_floor_tracks_published_credibility() {
    let published: [(usize, &str, [f64; 3]); 11] = [
        (0, "Supplier_1", [0.3221, 0.3434, 0.3345]),
        (0, "Supplier_2", [0.3453, 0.3375, 0.3172]),
        (0, "Supplier_3", [0.3403, 0.3270, 0.3327]),
        (0, "Supplier_4", [0.3378, 0.3326, 0.3296]),
        (0, "Supplier_5", [0.3373, 0.3666, 0.2962]),
        (2, "Supplier_1", [0.3252, 0.3464, 0.3284]),
        (2, "Supplier_2", [0.3379, 0.3401, 0.3220]),
        (2, "Supplier_3", [0.3345, 0.3238, 0.3417]),
        (2, "Supplier_4", [0.3260, 0.3430, 0.3310]),
        (2, "Supplier_5", [0.3348, 0.3184, 0.3468]),
        (2, "Supplier_6", [0.3458, 0.3459, 0.3083]),
    ];
    let rounds = paper_rounds();
    let reports: Vec<_> = rounds
        .iter()
        .map(|r| evaluate_round(r, &EvaluationConfig::default()).unwrap())
        .collect();
    let worst = published
        .iter()
        .flat_map(|(r, alt, cr)| {
            let got = reports[*r]
                .alternative(alt)
                .unwrap()
                .credibility
                .values
                .clone();
            cr.iter()
                .zip(got)
                .map(|(w, g)| (w - g).abs())
                .collect::<Vec<_>>()
        })
        .fold(0.0, f64::max);
    assert!(worst < 0.015, "{worst}");
}

#[test]
fn json_report_round_trips() {
    for r in paper_rounds() {
        let report = evaluate_round(&r, &EvaluationConfig::default()).unwrap();
        let text = io::emit_report(&report, Format::Json);
        assert_eq!(io::parse_report_json(&text).unwrap(), report);
        assert_eq!(io::emit_report(&report, Format::Json), text);
    }
}

#[test]
fn human_report_has_ranking_line_and_table() {
    let report = evaluate_round(&paper_rounds()[0], &EvaluationConfig::default()).unwrap();
    let text = io::emit_report(&report, Format::Human);
    assert!(text
        .lines()
        .any(|l| l == "Supplier_4 > Supplier_3 > Supplier_2 > Supplier_1 > Supplier_5"));
    assert!(text
        .lines()
        .any(|l| l.starts_with("Supplier_4") && l.ends_with("16.3165")));
}

#[test]
fn trace_covers_every_stage_once_per_slot() {
    let report = evaluate_round(&paper_rounds()[0], &EvaluationConfig::default()).unwrap();
    let records = io::trace_records(&report);
    let stages: HashSet<Stage> = records.iter().map(|r| r.stage).collect();
    for s in Stage::ALL {
        assert!(stages.contains(&s), "{s:?} missing");
    }
    let mut seen = HashSet::new();
    for r in &records {
        let key = (&r.alternative, r.stage, &r.expert, &r.criterion);
        assert!(seen.insert(key), "duplicate slot {key:?}");
    }
    let count = |s: Stage| records.iter().filter(|r| r.stage == s).count();
    // 5 alternatives x 3 experts x 5 criteria
    assert_eq!(count(Stage::Reliability), 75);
    assert_eq!(count(Stage::Z), 225);
    assert_eq!(count(Stage::Combined), 150);
    assert_eq!(count(Stage::Distance), 150);
    assert_eq!(count(Stage::GroupDistance), 30);
    assert_eq!(count(Stage::Alpha), 15);
    assert_eq!(count(Stage::Ge), 5);
    assert_eq!(count(Stage::Rank), 5);

    let csv = io::write_trace_csv(&records);
    assert!(csv.lines().skip(1).all(|l| {
        let value = l.rsplit(',').next().unwrap();
        value.split('.').nth(1).is_some_and(|d| d.len() >= 4)
    }));
    assert_eq!(io::parse_trace_csv(&csv).unwrap(), records);
}

#[test]
fn failing_round_does_not_stop_the_batch() {
    let mut rounds = paper_rounds();
    rounds[1].expert_labels.pop();
    let out = evaluate_all(&rounds, &EvaluationConfig::default());
    assert!(out[0].is_ok() && out[1].is_err() && out[2].is_ok());
}

#[test]
fn dirty_panel_is_flagged_not_fatal() {
    let flat = GroupAssessment::new(vec![Ifn::new(0.5, 0.2).unwrap(); 4]).unwrap();
    let tied = GroupAssessment::new(vec![
        Ifn::new(0.5, 0.2).unwrap(),
        Ifn::new(0.5, 0.2).unwrap(),
        Ifn::new(0.2, 0.5).unwrap(),
        Ifn::new(0.2, 0.5).unwrap(),
    ])
    .unwrap();
    let mut alts = IndexMap::new();
    alts.insert(
        "A".to_string(),
        Panel::new(vec![flat.clone(), tied.clone()]).unwrap(),
    );
    alts.insert("B".to_string(), Panel::new(vec![flat, tied]).unwrap());
    let input = RoundInput::new("dirty", labels("x", 4), labels("E", 2), alts).unwrap();
    let report = evaluate_round(&input, &EvaluationConfig::default()).unwrap();
    assert!(report.degeneracies.contains(&Degeneracy::TiedRanking));
    assert!(report.degeneracies.contains(&Degeneracy::DegenerateGroup {
        alternative: "A".into(),
        expert: "E1".into()
    }));
    assert!(report.degeneracies.contains(&Degeneracy::AllTies {
        alternative: "B".into(),
        expert: "E2".into()
    }));
    assert_eq!(report.ranking.order, ["A", "B"]);
    assert!(io::emit_report(&report, Format::Human).contains("note: "));
}

fn pair_strategy() -> impl Strategy<Value = (Ifn, Ifn)> {
    // a judgment with mu >= nu, and one that beats it on both components
    (0u8..=10, 0u8..=10, 1u8..=3, 1u8..=3).prop_filter_map("in domain", |(a, b, up, down)| {
        let (mu, nu) = (a.max(b), a.min(b));
        let base = Ifn::new(mu as f64 / 20.0, nu as f64 / 20.0).ok()?;
        if nu < down {
            return None;
        }
        let better = Ifn::new((mu + up) as f64 / 20.0, (nu - down) as f64 / 20.0).ok()?;
        Some((base, better))
    })
}

fn uniform_panel(items: Vec<Ifn>, experts: usize) -> Panel {
    let g = GroupAssessment::new(items).unwrap();
    Panel::new(vec![g; experts]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    /// A panel that dominates another criterion-wise, judged with the same
    /// attitude, never ranks below it.
    #[test]
    fn dominance_is_respected(
        pairs in proptest::collection::vec(pair_strategy(), 2..7),
        experts in 2usize..5,
    ) {
        let m = pairs.len();
        let (weak, strong): (Vec<Ifn>, Vec<Ifn>) = pairs.into_iter().unzip();
        let mut alts = IndexMap::new();
        // the dominated panel gets the label that wins ties
        alts.insert("A_weak".to_string(), uniform_panel(weak, experts));
        alts.insert("B_strong".to_string(), uniform_panel(strong, experts));
        let input = RoundInput::new("dom", labels("x", m), labels("E", experts), alts).unwrap();
        let report = evaluate_round(&input, &EvaluationConfig::default()).unwrap();
        prop_assert_eq!(&report.ranking.order[0], "B_strong");
    }

    #[test]
    fn judgment_files_round_trip(
        cells in proptest::collection::vec((0u8..=10, 0u8..=10), 2 * 2 * 3..=2 * 2 * 3),
        reference in any::<bool>(),
    ) {
        let ifns: Vec<Ifn> = cells
            .iter()
            .map(|&(a, b)| Ifn::new(a as f64 / 10.0, (b.min(10 - a)) as f64 / 10.0).unwrap())
            .collect();
        let mut alts = IndexMap::new();
        for (k, chunk) in ifns.chunks(6).enumerate() {
            let groups = chunk
                .chunks(3)
                .map(|g| GroupAssessment::new(g.to_vec()).unwrap())
                .collect();
            alts.insert(format!("Alt {k}"), Panel::new(groups).unwrap());
        }
        let mut input = RoundInput::new("p", labels("c", 3), labels("E", 2), alts).unwrap();
        if reference {
            input = input.with_reference(vec!["Alt 1".into(), "Alt 0".into()]);
        }
        let parsed = io::parse_judgments(io::write_judgments(&[input.clone()]).as_bytes()).unwrap();
        prop_assert_eq!(&parsed, &vec![input]);
        let again = io::parse_judgments(io::write_judgments(&parsed).as_bytes()).unwrap();
        prop_assert_eq!(again, parsed);
    }
}
