mod common;

use common::{barcode, circle_sheaf, parameter, proper_map};
use proptest::prelude::*;
use thicket::extend::Mode;
use thicket::interleave::{identity_certificate, widen_certificate};
use thicket::io::{parse, serialize, Document, Payload, SeedSpec, Space};
use thicket::pl::{ExperimentReport, Verdict};
use thicket::scalar::ExtendedScalar;

fn round_trips(doc: &Document) -> Result<(), TestCaseError> {
    let text = serialize(doc);
    let back = parse(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
    prop_assert_eq!(&back, doc);
    prop_assert_eq!(serialize(&back), text);
    Ok(())
}

fn word() -> impl Strategy<Value = String> {
    "[a-z][a-z0-9_]{0,6}"
}

fn verdict() -> impl Strategy<Value = Verdict> {
    prop_oneof![Just(Verdict::Pass), Just(Verdict::Fail), Just(Verdict::Inconclusive)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn barcodes(f in barcode(6), p in prop_oneof![Just(2u32), Just(3), Just(5)]) {
        round_trips(&Document::barcode(f.with_characteristic(p)))?;
    }

    #[test]
    fn circle_sheaves(f in prop_oneof![circle_sheaf(2, true), circle_sheaf(3, true)]) {
        round_trips(&Document::circle(f))?;
    }

    #[test]
    fn maps(f in proper_map(5)) {
        round_trips(&Document::map(f))?;
    }

    #[test]
    fn seeds(alpha in parameter(1, 4), two_sided in any::<bool>(), circle in any::<bool>()) {
        let mode = if two_sided { Mode::TwoSided } else { Mode::NonNegative };
        let space = if circle { Space::Circle(&alpha * &thicket::scalar::Scalar::int(8)) } else { Space::Line };
        round_trips(&Document { characteristic: 2, space, payload: Payload::Seed(SeedSpec { alpha, mode }) })?;
    }

    #[test]
    fn reports(
        f in barcode(3),
        a in parameter(0, 2),
        name in word(),
        inputs in prop::collection::vec((word(), "[a-z0-9/{}@,\\[\\]()]{1,12}( [a-z]{1,4})?"), 0..3),
        verdict in verdict(),
        note in "([a-z]{1,5} ){0,3}",
        with_certificate in any::<bool>(),
    ) {
        let certificate = with_certificate
            .then(|| widen_certificate(&f, &f, &identity_certificate(&f), &a).expect("widening"));
        let r = ExperimentReport {
            experiment: name,
            inputs,
            bounds: vec![("a".into(), ExtendedScalar::Finite(a.clone())), ("top".into(), ExtendedScalar::PosInf)],
            certificate,
            verdict,
            note: note.trim().to_string(),
            micros: 0,
        };
        round_trips(&Document::report(r, f.characteristic()))?;
    }

    #[test]
    fn parsing_never_panics(text in "(thicket/1\n)?(field [0-9]\n)?(space (line|circle [0-9/]{1,3})\n)?([a-z]{0,8}( [-\\[\\](),0-9/inf]{0,8}){0,3}\n){0,6}") {
        let _ = parse(&text);
    }

    #[test]
    fn truncation_is_an_error(f in barcode(4), cut in 1usize..20) {
        let text = serialize(&Document::barcode(f));
        let kept: Vec<&str> = text.lines().collect();
        let n = kept.len().saturating_sub(cut.min(kept.len() - 1));
        let truncated = kept[..n].join("\n");
        prop_assert!(n == kept.len() || parse(&truncated).is_err());
    }
}
