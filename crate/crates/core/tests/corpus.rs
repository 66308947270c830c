use polyterm::corpus::{self, load_corpus, Expected};
use polyterm::interp::{format_certificate, parse_certificate};
use polyterm::trs::{format_trs, parse_trs};

#[test]
fn systems_round_trip() {
    for e in load_corpus() {
        let printed = format_trs(&e.trs);
        assert_eq!(parse_trs(&printed).unwrap(), e.trs, "{}", e.id);
    }
}

#[test]
fn certificates_round_trip() {
    for (name, text) in corpus::FILES.iter().filter(|(n, _)| n.ends_with(".cert")) {
        let cert = parse_certificate(text).unwrap();
        assert_eq!(parse_certificate(&format_certificate(&cert)).unwrap(), cert, "{name}");
    }
}

#[test]
fn bundled_files_match_data_directory() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    for (name, text) in corpus::FILES {
        assert_eq!(std::fs::read_to_string(dir.join(name)).unwrap(), *text, "{name}");
    }
}

#[test]
fn every_certificate_meets_expectation() {
    let summary = corpus::verify_all();
    assert!(summary.all_passed(), "{summary}");
    assert!(summary.outcomes.iter().all(|o| !o.unknowns), "{summary}");
    let negatives = summary.outcomes.iter().filter(|o| matches!(o.expected, Expected::RejectedAt(_))).count();
    assert_eq!(negatives, 10);
}

#[test]
fn r6_extends_s_by_one_rule() {
    let corpus = load_corpus();
    let get = |id: &str| corpus.iter().find(|e| e.id == id).unwrap().trs.clone();
    let (s, r6) = (get("S"), get("R6"));
    assert_eq!(&r6.rules()[..s.len()], s.rules());
    assert_eq!(r6.rules()[s.len()].to_string(), "f(x) -> x");
}
