//! Normalize/denormalize round trips and side-effect preservation.

mod common;

use apievolve_core::normalize::{denormalize_unit, normalize_invocation, round_trip, TempSelection};
use apievolve_core::script::{apply_script, generate_script, Outcome};
use apievolve_core::syntax::lexer::tokenize;
use apievolve_core::syntax::query::{enclosing_method, find_calls};
use apievolve_core::{parse, ApiMapping, SourceUnit};

fn tokens(s: &str) -> Vec<String> {
    tokenize(s).unwrap().iter().map(|t| t.span.slice(s).to_string()).collect()
}

fn effects(unit: &SourceUnit) -> Vec<std::collections::BTreeSet<usize>> {
    unit.ids()
        .filter(|id| matches!(unit.kind(*id), apievolve_core::syntax::NodeKind::MethodDecl { .. }))
        .map(|m| common::effect_counts(unit, m))
        .collect()
}

#[test]
fn hundred_pure_sites_round_trip_token_identically() {
    let mut failures = Vec::new();
    for seed in 0..100 {
        let site = common::pure_site(seed);
        let unit = parse(&site.source).unwrap();
        let call = find_calls(&unit, &site.method, site.arity)[0];
        match round_trip(&unit, call, None) {
            Ok(back) if tokens(&back.text) == tokens(&site.source) => {}
            Ok(back) => failures.push(format!("seed {seed}:\n{}\n---\n{}", site.source, back.text)),
            Err(e) => failures.push(format!("seed {seed}: {e}\n{}", site.source)),
        }
    }
    assert!(failures.is_empty(), "{}/100 failed:\n{}", failures.len(), failures.join("\n"));
}

#[test]
fn normalized_temps_are_assigned_once() {
    for seed in 0..100 {
        let site = common::pure_site(seed);
        let unit = parse(&site.source).unwrap();
        let call = find_calls(&unit, &site.method, site.arity)[0];
        let (n, rec) = normalize_invocation(&unit, call, None).unwrap();
        for name in rec.temp_names() {
            let toks = tokens(&n.text);
            let writes = toks.windows(2).filter(|w| w[0] == name && w[1] == "=").count();
            assert_eq!(writes, 1, "seed {seed}: {name}\n{}", n.text);
        }
        let back = denormalize_unit(&n, TempSelection::Scheme).unwrap();
        assert!(!back.unit.text.contains("parameterVariable") && !back.unit.text.contains("classNameVariable"), "{}", back.unit.text);
    }
}

#[test]
fn round_trip_preserves_side_effect_counts() {
    for f in common::effect_fixtures() {
        let unit = parse(f.source).unwrap();
        let call = find_calls(&unit, f.method, f.arity)[0];
        let back = round_trip(&unit, call, None).unwrap();
        assert_eq!(effects(&back), effects(&unit), "{}:\n{}", f.name, back.text);
    }
}

#[test]
fn application_preserves_side_effect_counts_on_every_path() {
    let hour = generate_script(&parse(common::HOUR_EXAMPLE).unwrap(), &ApiMapping::parse(common::HOUR_MAPPING).unwrap()).unwrap();
    let minute = generate_script(&parse(common::MINUTE_EXAMPLE).unwrap(), &ApiMapping::parse(common::MINUTE_MAPPING).unwrap()).unwrap();
    for f in common::effect_fixtures() {
        let script = if f.script == "hour" { &hour } else { &minute };
        let unit = parse(f.source).unwrap();
        let (out, report) = apply_script(script, &unit).unwrap();
        assert_eq!(report.outcomes.len(), 1, "{}", f.name);
        assert_eq!(report.outcomes[0].outcome, Outcome::Updated, "{}", f.name);
        let before = effects(&unit);
        let after = effects(&out);
        assert_eq!(before, after, "{}:\n{}", f.name, out.text);
        let call = find_calls(&out, f.method, f.arity)[0];
        assert!(enclosing_method(&out, call).is_some());
    }
}
