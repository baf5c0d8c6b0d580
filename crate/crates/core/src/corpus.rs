//! Built-in diagrams. `KNOTZETA_CORPUS` points at a directory of `.knot`
//! files to use instead.

use std::path::Path;

use crate::error::{Error, Result};
use crate::knot_model::{parse_pd, KnotDiagram};

pub const CORPUS_ENV: &str = "KNOTZETA_CORPUS";

const BUILTIN: &[(&str, &str)] = &[
    ("5_1", include_str!("../corpus/5_1.knot")),
    ("5_2", include_str!("../corpus/5_2.knot")),
    ("6_1", include_str!("../corpus/6_1.knot")),
    ("figure_eight", include_str!("../corpus/figure_eight.knot")),
    ("trefoil", include_str!("../corpus/trefoil.knot")),
    (
        "trefoil_mirror",
        include_str!("../corpus/trefoil_mirror.knot"),
    ),
    ("unknot", include_str!("../corpus/unknot.knot")),
    ("unknot_kink2", include_str!("../corpus/unknot_kink2.knot")),
    ("unknot_kink3", include_str!("../corpus/unknot_kink3.knot")),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub diagram: KnotDiagram,
}

fn parse_named(name: &str, text: &str) -> Result<CorpusEntry> {
    Ok(CorpusEntry {
        name: name.to_string(),
        diagram: parse_pd(text)?,
    })
}

pub fn builtin() -> Vec<CorpusEntry> {
    BUILTIN
        .iter()
        .map(|(n, t)| parse_named(n, t).expect("built-in corpus parses"))
        .collect()
}

/// Every `*.knot` file in `dir`, sorted by name.
pub fn load_dir(dir: &Path) -> Result<Vec<CorpusEntry>> {
    let rd = std::fs::read_dir(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    let mut paths: Vec<_> = rd
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "knot"))
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
            let name = p
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            parse_named(&name, &text)
        })
        .collect()
}

/// The corpus in effect: the override directory when set, else the built-in.
pub fn corpus() -> Result<Vec<CorpusEntry>> {
    match std::env::var_os(CORPUS_ENV) {
        Some(dir) if !dir.is_empty() => load_dir(Path::new(&dir)),
        _ => Ok(builtin()),
    }
}

pub fn lookup(name: &str) -> Result<Option<CorpusEntry>> {
    let name = name.strip_suffix(".knot").unwrap_or(name);
    Ok(corpus()?.into_iter().find(|e| e.name == name))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alexander::{alexander_polynomial, knot_determinant};
    use crate::laurent::QPoly;

    #[test]
    fn builtin_values() {
        type Row<'a> = (&'a str, &'a [(i64, i64)], u64);
        let expect: &[Row] = &[
            ("unknot", &[(0, 1)], 1),
            ("unknot_kink2", &[(0, 1)], 1),
            ("unknot_kink3", &[(0, 1)], 1),
            ("trefoil", &[(0, 1), (1, -1), (2, 1)], 3),
            ("trefoil_mirror", &[(0, 1), (1, -1), (2, 1)], 3),
            ("figure_eight", &[(0, 1), (1, -3), (2, 1)], 5),
            ("5_1", &[(0, 1), (1, -1), (2, 1), (3, -1), (4, 1)], 5),
            ("5_2", &[(0, 2), (1, -3), (2, 2)], 7),
            ("6_1", &[(0, 2), (1, -5), (2, 2)], 9),
        ];
        let all = builtin();
        assert_eq!(all.len(), expect.len());
        for (name, poly, det) in expect {
            let d = &all.iter().find(|e| e.name == *name).unwrap().diagram;
            assert_eq!(
                alexander_polynomial(d).unwrap().poly,
                QPoly::from_ints(poly),
                "{name}"
            );
            assert_eq!(knot_determinant(d).unwrap(), *det, "{name}");
        }
    }

    #[test]
    fn lookup_strips_extension() {
        assert!(lookup("trefoil.knot").unwrap().is_some());
        assert!(lookup("nope").unwrap().is_none());
    }
}
