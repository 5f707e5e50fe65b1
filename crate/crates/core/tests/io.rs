use proptest::prelude::*;
use toposmooth::io::config::{parse_config, Emit};
use toposmooth::io::csv::format_csv;
use toposmooth::io::report::{
    format_pairs_csv, to_canonical_json, write_evaluation, ReportDocument,
};
use toposmooth::io::svg::series_chart;
use toposmooth::io::synth::{spike_train, NOISE_SCALE, SPIKE_COUNT};
use toposmooth::io::{
    generate_synthetic, load_csv, parse_csv, write_csv, RunConfig, SyntheticKind,
};
use toposmooth::{diagram_of, evaluate, Error, EvalConfig, TimeSeries};

#[test]
fn csv_examples() {
    let s = parse_csv("1\n2\n3\n").unwrap();
    assert_eq!(s.values(), &[1.0, 2.0, 3.0]);
    assert_eq!(s.explicit_positions(), None);
    let s = parse_csv("x,y\n0,1.5\n2,2.5\n").unwrap();
    assert_eq!(s.values(), &[1.5, 2.5]);
    assert_eq!(s.explicit_positions(), Some(&[0.0, 2.0][..]));
    match parse_csv("1\nabc\n") {
        Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
        other => panic!("{other:?}"),
    }
    assert!(parse_csv("# only\n4\n").is_err());
    assert!(parse_csv("0,1\n0,2\n").is_err());
}

#[test]
fn missing_file_is_an_io_error() {
    let err = load_csv("/nonexistent/series.csv").unwrap_err();
    assert!(!err.is_validation());
}

proptest! {
    #[test]
    fn csv_round_trip(v in prop::collection::vec(-1e12f64..1e12, 2..50), with_x: bool) {
        let s = if with_x {
            let xs: Vec<f64> = (0..v.len()).map(|i| i as f64 * 0.37 - 3.0).collect();
            TimeSeries::with_positions(v.clone(), xs).unwrap()
        } else {
            TimeSeries::new(v.clone()).unwrap()
        };
        let back = parse_csv(&format_csv(&s)).unwrap();
        prop_assert_eq!(back.values(), s.values());
        prop_assert_eq!(back.explicit_positions(), s.explicit_positions());
    }
}

#[test]
fn csv_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("walk.csv");
    let s = generate_synthetic(SyntheticKind::RandomWalk, 40, 2).unwrap();
    write_csv(&s, &path).unwrap();
    let back = load_csv(&path).unwrap();
    assert_eq!(back.values(), s.values());
    assert_eq!(back.label(), "walk");
}

#[test]
fn synthetic_examples() {
    for kind in [
        SyntheticKind::SpikeTrain,
        SyntheticKind::NoisySine,
        SyntheticKind::RandomWalk,
    ] {
        let a = generate_synthetic(kind, 64, 4).unwrap();
        assert_eq!(a, generate_synthetic(kind, 64, 4).unwrap());
        assert_ne!(
            a.values(),
            generate_synthetic(kind, 64, 5).unwrap().values()
        );
        assert!(generate_synthetic(kind, 15, 4).is_err());
    }
    let (s, spikes) = spike_train(256, 7).unwrap();
    assert_eq!(spikes.len(), SPIKE_COUNT);
    let mut above: Vec<usize> = (0..s.len())
        .filter(|&i| s.values()[i] > 10.0 * NOISE_SCALE)
        .collect();
    above.sort();
    let mut placed = spikes.clone();
    placed.sort();
    assert_eq!(above, placed);
}

#[test]
fn pairs_csv_layout() {
    let d = diagram_of(&[1.0, 5.0, 2.0, 4.0, 0.0, 3.0]).unwrap();
    assert_eq!(
        format_pairs_csv(&d),
        "birth_index,death_index,birth,death,persistence\n2,3,2.0,4.0,2.0\n0,1,1.0,5.0,4.0\n"
    );
}

#[test]
fn config_precedence_and_echo() {
    let mut cfg = RunConfig::default();
    cfg.apply(&parse_config("seed = 99\nemit = csv, svg\napen-m = 3\n").unwrap())
        .unwrap();
    assert_eq!(cfg.seed, 99);
    assert_eq!(cfg.apen_m, 3);
    assert_eq!(
        cfg.emit,
        Emit {
            csv: true,
            json: false,
            svg: true
        }
    );
    let text = serde_json::to_string(&cfg).unwrap();
    let back: RunConfig = serde_json::from_str(&text).unwrap();
    assert_eq!(back, cfg);
}

fn small_evaluation() -> (TimeSeries, toposmooth::Evaluation) {
    let x = generate_synthetic(SyntheticKind::SpikeTrain, 128, 5).unwrap();
    let e = evaluate(&x, &EvalConfig::default()).unwrap();
    (x, e)
}

#[test]
fn report_json_is_canonical() {
    let (_, e) = small_evaluation();
    let doc = ReportDocument::new(&e, &RunConfig::default());
    let text = to_canonical_json(&doc).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(to_canonical_json(&parsed).unwrap(), text);
    let typed: ReportDocument = serde_json::from_str(&text).unwrap();
    assert_eq!(typed, doc);
    for key in [
        "dataset",
        "methods",
        "metrics",
        "overall_rank",
        "sweep_points",
        "config",
    ] {
        assert!(parsed.get(key).is_some(), "missing {key}");
    }
    for metric in ["l1", "linf", "w1", "bottleneck"] {
        let entry = &parsed["metrics"][metric]["topo"];
        assert!(entry.get("auc").is_some() && entry.get("rank").is_some());
    }
}

#[test]
fn svg_has_one_polyline_per_series() {
    let x = generate_synthetic(SyntheticKind::NoisySine, 50, 1).unwrap();
    let y = toposmooth::Method::Gaussian.smooth(&x, 2.0).unwrap();
    let z = toposmooth::Method::Median.smooth(&x, 5.0).unwrap();
    let svg = series_chart("t", &x, &[("gaussian", &y), ("median", &z)]);
    assert!(svg.contains("version=\"1.1\""));
    assert_eq!(svg.matches("<polyline").count(), 3);
}

#[test]
fn write_evaluation_respects_emit_flags() {
    let (x, e) = small_evaluation();
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = RunConfig {
        out_dir: dir.path().to_path_buf(),
        ..RunConfig::default()
    };
    let all = write_evaluation(&x, &e, &cfg).unwrap();
    assert_eq!(all.len(), 1 + 4 + 1);
    for path in &all {
        assert!(path.exists());
    }
    let chart = std::fs::read_to_string(dir.path().join(format!("{}.w1.svg", x.label()))).unwrap();
    assert_eq!(chart.matches("<polyline").count(), 6);
    cfg.emit = Emit {
        csv: false,
        json: true,
        svg: false,
    };
    assert_eq!(write_evaluation(&x, &e, &cfg).unwrap().len(), 1);
    cfg.out_dir = "/proc/forbidden/out".into();
    assert!(!write_evaluation(&x, &e, &cfg).unwrap_err().is_validation());
}
