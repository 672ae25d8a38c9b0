//! The cached generic indecomposables must stay in sync with the catalog.

use std::collections::BTreeMap;
use std::time::Instant;

use spflag::catalog::{self, LabelKind};
use spflag::decomposer::end_algebra;
use spflag::exactlin::Q;
use spflag::flagobj::FlagObject;

fn sym_entries() -> Vec<String> {
    let mut out: Vec<String> = catalog::rows()
        .iter()
        .flat_map(|r| r.labels.iter())
        .filter_map(|l| match &l.kind {
            LabelKind::Sym { e } => Some(e.to_string()),
            LabelKind::Plain { .. } => None,
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

#[test]
fn cache_covers_every_sym_entry() {
    for e in sym_entries() {
        let x = catalog::gl_indecomposable(&e.parse().unwrap()).unwrap();
        assert_eq!(x.dim_vector().to_string(), e);
        assert_eq!(end_algebra(&x).len(), 1, "{}", e);
    }
}

/// Rewrites `data/gl_indecomposables.json` from scratch.
#[test]
#[ignore]
fn regenerate_gl_cache() {
    let mut map: BTreeMap<String, FlagObject<Q>> = BTreeMap::new();
    for e in sym_entries() {
        let t = Instant::now();
        let x = catalog::synthesize_gl_indecomposable(&e.parse().unwrap()).unwrap();
        println!("{} synthesized in {:?}", e, t.elapsed());
        map.insert(e, x);
    }
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/gl_indecomposables.json");
    std::fs::write(path, serde_json::to_string_pretty(&map).unwrap() + "\n").unwrap();
}
