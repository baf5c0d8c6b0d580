use serde::{Deserialize, Serialize};

use super::diagram::{ArcId, Crossing, KnotDiagram, Sign};
use crate::error::{Error, Result};

/// Parses the crossing-list diagram format.
///
/// One crossing per line as `X<sign> <over> <under_in> <under_out>` with
/// `sign` one of `+`/`-`. A component that never passes under anything is
/// declared as `O <arc>`. Lines starting with `#` are comments, and `/`
/// separates entries on one line, so a whole diagram fits on a command line.
pub fn parse_pd(text: &str) -> Result<KnotDiagram> {
    let mut crossings = Vec::new();
    let mut free = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line_no = lineno + 1;
        if line.trim_start().starts_with('#') {
            continue;
        }
        let mut offset = 0;
        for segment in line.split('/') {
            let seg_start = offset;
            offset += segment.len() + 1;
            let tokens = tokenize(segment, seg_start);
            let Some(&(head_col, head)) = tokens.first() else {
                continue;
            };
            let syntax = |column: usize, message: String| Error::Syntax {
                line: line_no,
                column: column + 1,
                message,
            };
            let number = |idx: usize| -> Result<usize> {
                let &(col, tok) = tokens.get(idx).ok_or_else(|| {
                    syntax(
                        seg_start + segment.trim_end().len(),
                        "expected an arc number".into(),
                    )
                })?;
                match tok.parse::<usize>() {
                    Ok(0) | Err(_) => Err(syntax(
                        col,
                        format!("expected a positive arc number, found {tok:?}"),
                    )),
                    Ok(v) => Ok(v),
                }
            };
            let expect_len = |n: usize| -> Result<()> {
                match tokens.get(n) {
                    Some(&(col, tok)) => {
                        Err(syntax(col, format!("unexpected trailing token {tok:?}")))
                    }
                    None => Ok(()),
                }
            };
            match head {
                "X+" | "X-" => {
                    let sign = if head == "X+" {
                        Sign::Positive
                    } else {
                        Sign::Negative
                    };
                    let (over, under_in, under_out) = (number(1)?, number(2)?, number(3)?);
                    expect_len(4)?;
                    crossings.push(Crossing::new(sign, over, under_in, under_out));
                }
                "O" => {
                    free.push(ArcId(number(1)?));
                    expect_len(2)?;
                }
                other => {
                    return Err(syntax(
                        head_col,
                        format!("expected X+, X- or O, found {other:?}"),
                    ));
                }
            }
        }
    }
    KnotDiagram::new(crossings, &free)
}

fn tokenize(segment: &str, base: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in segment.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((base + s, &segment[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((base + s, &segment[s..]));
    }
    out
}

/// JSON form of a diagram: `{"arcs": n, "crossings": [...]}`. Arcs that never
/// pass under a crossing are free components.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub arcs: usize,
    pub crossings: Vec<CrossingJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingJson {
    pub sign: i64,
    pub over: usize,
    pub under_in: usize,
    pub under_out: usize,
}

impl From<&KnotDiagram> for DiagramJson {
    fn from(d: &KnotDiagram) -> Self {
        DiagramJson {
            arcs: d.n_arcs(),
            crossings: d
                .crossings()
                .iter()
                .map(|c| CrossingJson {
                    sign: c.sign.as_i64(),
                    over: c.over.0,
                    under_in: c.under_in.0,
                    under_out: c.under_out.0,
                })
                .collect(),
        }
    }
}

impl TryFrom<&DiagramJson> for KnotDiagram {
    type Error = Error;

    fn try_from(j: &DiagramJson) -> Result<Self> {
        let crossings = j
            .crossings
            .iter()
            .map(|c| {
                let sign = Sign::from_i64(c.sign).ok_or_else(|| {
                    Error::Precondition(format!("crossing sign must be 1 or -1, got {}", c.sign))
                })?;
                Ok(Crossing::new(sign, c.over, c.under_in, c.under_out))
            })
            .collect::<Result<Vec<_>>>()?;
        let unders: std::collections::BTreeSet<usize> =
            j.crossings.iter().map(|c| c.under_in).collect();
        let free: Vec<ArcId> = (1..=j.arcs)
            .filter(|a| !unders.contains(a))
            .map(ArcId)
            .collect();
        let d = KnotDiagram::new(crossings, &free)?;
        if d.n_arcs() != j.arcs {
            return Err(Error::ArcNumbering(format!(
                "declared {} arcs, found {}",
                j.arcs,
                d.n_arcs()
            )));
        }
        Ok(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "X+ 3 1 2 / X+ 1 2 3 / X+ 2 3 1";

    #[test]
    fn parses_inline_trefoil() {
        let d = parse_pd(TREFOIL).unwrap();
        assert_eq!(d.n_arcs(), 3);
        assert_eq!(d.crossings().len(), 3);
        assert!(d.crossings().iter().all(|c| c.sign == Sign::Positive));
        assert_eq!(d.render_inline(), TREFOIL);
    }

    #[test]
    fn comments_and_lines() {
        let d =
            parse_pd("# trefoil\nX+ 3 1 2\n\nX+ 1 2 3\n  # indented comment\nX+ 2 3 1\n").unwrap();
        assert_eq!(d, parse_pd(TREFOIL).unwrap());
    }

    #[test]
    fn empty_input() {
        assert_eq!(parse_pd(""), Err(Error::EmptyDiagram));
        assert_eq!(parse_pd("# nothing\n"), Err(Error::EmptyDiagram));
    }

    #[test]
    fn kink_accepted() {
        let d = parse_pd("X+ 1 1 2 / X- 2 2 1").unwrap();
        assert_eq!(d.crossings()[0].over, d.crossings()[0].under_in);
    }

    #[test]
    fn syntax_errors_carry_position() {
        assert_eq!(
            parse_pd("X+ 3 1 2\nX* 1 2 3"),
            Err(Error::Syntax {
                line: 2,
                column: 1,
                message: "expected X+, X- or O, found \"X*\"".into()
            })
        );
        match parse_pd("X+ 3 1 2 / X+ 1 two 3") {
            Err(Error::Syntax {
                line: 1,
                column: 17,
                ..
            }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_pd("X+ 3 1"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_pd("X+ 3 1 2 4"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_pd("X+ 0 1 1"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn structural_errors() {
        assert_eq!(
            parse_pd("X+ 3 1 2 / X+ 1 2 3 / X+ 5 3 1"),
            Err(Error::DanglingArc(5))
        );
        assert_eq!(parse_pd("X+ 1 1 2"), Err(Error::NonClosedComponent(1)));
        assert!(matches!(
            parse_pd("X+ 3 1 3 / X+ 1 3 2 / X+ 2 2 1"),
            Err(Error::ArcNumbering(_))
        ));
    }

    #[test]
    fn unknot_line() {
        let d = parse_pd("O 1").unwrap();
        assert_eq!(d, KnotDiagram::unknot());
        assert_eq!(d.render(), "O 1\n");
    }

    #[test]
    fn json_roundtrip() {
        for text in [TREFOIL, "O 1", "X+ 3 1 2 / X+ 1 2 3 / X+ 2 3 1 / O 4"] {
            let d = parse_pd(text).unwrap();
            let j = DiagramJson::from(&d);
            let s = serde_json::to_string(&j).unwrap();
            let back: DiagramJson = serde_json::from_str(&s).unwrap();
            assert_eq!(KnotDiagram::try_from(&back).unwrap(), d);
        }
        let j = DiagramJson::from(&parse_pd(TREFOIL).unwrap());
        assert_eq!(
            serde_json::to_string(&j).unwrap(),
            r#"{"arcs":3,"crossings":[{"sign":1,"over":3,"under_in":1,"under_out":2},{"sign":1,"over":1,"under_in":2,"under_out":3},{"sign":1,"over":2,"under_in":3,"under_out":1}]}"#
        );
    }
}
