//! Catalog ingestion: JSON entries holding generators in cycle notation plus
//! declared factorisations, validated at load time.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use corefact::factcheck::{make_factorisation, Factorisation};
use corefact::perm::{Group, Perm};

/// The catalog shipped with the tool.
pub const DEFAULT_CATALOG: &str = include_str!("../data/default-catalog.json");

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct FactorisationGens {
    pub a: Vec<String>,
    pub b: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<String>,
    #[serde(default)]
    pub factorisations: Vec<FactorisationGens>,
    #[serde(default)]
    pub tags: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
struct CatalogFile {
    entries: Vec<CatalogEntry>,
}

/// Parses and cross-validates a catalog document. Duplicate names are
/// rejected; JSON errors surface with line context.
pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>, String> {
    let file: CatalogFile = serde_json::from_str(text)
        .map_err(|e| format!("catalog parse error at line {}, column {}: {e}", e.line(), e.column()))?;
    let mut seen = std::collections::BTreeSet::new();
    for entry in &file.entries {
        if !seen.insert(entry.name.clone()) {
            return Err(format!("duplicate catalog entry name {:?}", entry.name));
        }
    }
    Ok(file.entries)
}

/// Loads from a path, or the embedded default when the path is `None` or
/// the literal string `default`.
pub fn load_catalog(path: Option<&Path>) -> Result<Vec<CatalogEntry>, String> {
    match path {
        None => parse_catalog(DEFAULT_CATALOG),
        Some(p) if p.as_os_str() == "default" => parse_catalog(DEFAULT_CATALOG),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| format!("cannot read catalog {}: {e}", p.display()))?;
            parse_catalog(&text)
        }
    }
}

/// A catalog entry realised as an enumerated group with validated
/// factorisations.
pub struct BuiltEntry {
    pub entry: CatalogEntry,
    pub group: Arc<Group>,
    pub factorisations: Vec<Arc<Factorisation>>,
}

fn parse_generators(
    entry: &str,
    texts: &[String],
    degree: usize,
) -> Result<Vec<Perm>, String> {
    texts
        .iter()
        .map(|t| {
            Perm::parse(t, degree).map_err(|e| format!("entry {entry:?}: generator {t:?}: {e}"))
        })
        .collect()
}

/// Builds one entry: element enumeration under the cap and validation of
/// every declared factorisation.
pub fn build_entry(entry: &CatalogEntry, max_order: usize) -> Result<BuiltEntry, String> {
    let gens = parse_generators(&entry.name, &entry.generators, entry.degree)?;
    let group = Group::generate(&gens, entry.degree, max_order)
        .map_err(|e| format!("entry {:?}: {e}", entry.name))?;
    let mut factorisations = Vec::new();
    for (i, fact) in entry.factorisations.iter().enumerate() {
        let a_gens = parse_generators(&entry.name, &fact.a, entry.degree)?;
        let b_gens = parse_generators(&entry.name, &fact.b, entry.degree)?;
        let a = Group::subgroup_generated(&group, &a_gens)
            .map_err(|e| format!("entry {:?} factorisation {i}: factor A: {e}", entry.name))?;
        let b = Group::subgroup_generated(&group, &b_gens)
            .map_err(|e| format!("entry {:?} factorisation {i}: factor B: {e}", entry.name))?;
        let f = make_factorisation(&group, &a, &b)
            .map_err(|e| format!("entry {:?} factorisation {i}: {e}", entry.name))?;
        factorisations.push(Arc::new(f));
    }
    Ok(BuiltEntry {
        entry: entry.clone(),
        group,
        factorisations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_catalog_parses_and_builds() {
        let entries = parse_catalog(DEFAULT_CATALOG).unwrap();
        assert!(entries.iter().any(|e| e.name == "example-2.4"));
        assert!(entries.iter().any(|e| e.name == "example-5.7"));
        for entry in &entries {
            let built = build_entry(entry, 20000).unwrap();
            built.group.verify_group_axioms().unwrap();
            for f in &built.factorisations {
                assert!(f.a().is_subgroup_of(built.group.as_ref()));
                assert!(f.b().is_subgroup_of(built.group.as_ref()));
            }
        }
    }

    #[test]
    fn expected_orders() {
        let entries = parse_catalog(DEFAULT_CATALOG).unwrap();
        let order_of = |name: &str| {
            let e = entries.iter().find(|e| e.name == name).unwrap();
            build_entry(e, 20000).unwrap().group.order()
        };
        assert_eq!(order_of("example-2.4"), 48);
        assert_eq!(order_of("example-5.7"), 20);
        assert_eq!(order_of("sl23"), 24);
        assert_eq!(order_of("q8"), 8);
        assert_eq!(order_of("s5"), 120);
    }

    #[test]
    fn bad_inputs_are_named() {
        let err = parse_catalog("{\"entries\": [").unwrap_err();
        assert!(err.contains("line"));

        let entry = CatalogEntry {
            name: "bad".into(),
            degree: 6,
            generators: vec!["(1,7)".into()],
            factorisations: vec![],
            tags: vec![],
        };
        let err = build_entry(&entry, 100).unwrap_err();
        assert!(err.contains("bad"), "{err}");
        assert!(err.contains('7'), "{err}");

        let entry = CatalogEntry {
            name: "notfact".into(),
            degree: 3,
            generators: vec!["(1,2)".into(), "(1,2,3)".into()],
            factorisations: vec![FactorisationGens {
                a: vec!["(1,2)".into()],
                b: vec!["(1,2)".into()],
            }],
            tags: vec![],
        };
        let err = build_entry(&entry, 100).unwrap_err();
        assert!(err.contains("not a factorisation"), "{err}");

        let dup = r#"{"entries": [
            {"name": "x", "degree": 2, "generators": ["(1,2)"]},
            {"name": "x", "degree": 2, "generators": ["(1,2)"]}
        ]}"#;
        assert!(parse_catalog(dup).unwrap_err().contains("duplicate"));
    }
}
