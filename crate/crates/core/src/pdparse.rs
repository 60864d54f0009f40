//! PD-code text format and the built-in catalog of named links.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! PD   ::= item (';' item)*
//! item ::= 'X[' n ',' n ',' n ',' n ']' | 'O'
//! ```
//!
//! `O` is a crossingless unknotted component.

use std::fmt;

use thiserror::Error;

use crate::diagram::{Arc, Diagram, DiagramError, ValidationReport};
use crate::laurent::LaurentPoly;
use crate::skein;
use crate::splitting;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("invalid diagram: {0}")]
    Invalid(ValidationReport),
    #[error("line {line}: {source}")]
    Line { line: usize, source: Box<ParseError> },
    #[error("unknown catalog entry {name:?}; available: {}", available.join(", "))]
    UnknownCatalog { name: String, available: Vec<String> },
}

impl From<DiagramError> for ParseError {
    fn from(e: DiagramError) -> Self {
        match e {
            DiagramError::Invalid(r) => ParseError::Invalid(r),
            DiagramError::UnknownCrossing { .. } => unreachable!("parsing addresses no crossing ids"),
        }
    }
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::Syntax { pos: self.pos, msg: msg.into() }
    }

    fn expect(&mut self, ch: u8) -> Result<(), ParseError> {
        if self.peek() == Some(ch) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", ch as char)))
        }
    }

    fn number(&mut self) -> Result<Arc, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected arc label"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        text.parse().map_err(|_| ParseError::Syntax { pos: start, msg: "arc label out of range".into() })
    }
}

/// Parses a single PD expression into a validated diagram.
pub fn parse_pd(text: &str) -> Result<Diagram, ParseError> {
    let mut cur = Cursor { src: text.as_bytes(), pos: 0 };
    let mut quads = Vec::new();
    let mut loops = 0;
    loop {
        match cur.peek() {
            Some(b'O') => {
                cur.pos += 1;
                loops += 1;
            }
            Some(b'X') => {
                cur.pos += 1;
                cur.expect(b'[')?;
                let mut q = [0; 4];
                for (i, slot) in q.iter_mut().enumerate() {
                    if i > 0 {
                        cur.expect(b',').map_err(|_| cur.err("crossing needs exactly 4 arc labels"))?;
                    }
                    *slot = cur.number()?;
                }
                cur.expect(b']').map_err(|_| cur.err("crossing needs exactly 4 arc labels"))?;
                quads.push(q);
            }
            Some(_) => return Err(cur.err("expected 'X[' or 'O'")),
            None => return Err(cur.err("expected 'X[' or 'O'")),
        }
        match cur.peek() {
            None => break,
            Some(b';') => cur.pos += 1,
            Some(_) => return Err(cur.err("expected ';' or end of input")),
        }
    }
    Ok(Diagram::from_pd(&quads, loops)?)
}

/// Parses a file: one PD expression per line, `#` starts a comment, blank
/// lines are skipped.
pub fn parse_pd_file(text: &str) -> Result<Vec<Diagram>, ParseError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let d = parse_pd(line).map_err(|e| ParseError::Line { line: i + 1, source: Box::new(e) })?;
        out.push(d);
    }
    Ok(out)
}

fn write_items(d: &Diagram) -> String {
    let mut items: Vec<String> = d.crossings().iter().map(|c| c.to_string()).collect();
    items.extend((0..d.free_loops()).map(|_| "O".to_string()));
    items.join(";")
}

/// Canonical text: arcs relabeled along components, crossings sorted by
/// smallest arc label.
pub fn serialize_pd(d: &Diagram) -> String {
    write_items(&d.canonical_form())
}

/// Text that keeps this diagram's own labels and crossing order, so crossing
/// ids survive a round trip.
pub fn write_pd(d: &Diagram) -> String {
    write_items(d)
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub pd: &'static str,
    pub components: usize,
    /// Expected Conway polynomial, rendered in `z`.
    pub conway: &'static str,
    /// Expected upper triangle of the linking matrix, row by row.
    pub linking: &'static [i64],
}

#[derive(Debug, Error)]
pub enum CatalogCheckError {
    #[error("{name}: {source}")]
    Parse { name: &'static str, source: ParseError },
    #[error("{name}: {what} expected {expected}, got {got}")]
    Mismatch { name: &'static str, what: &'static str, expected: String, got: String },
}

impl CatalogEntry {
    pub fn diagram(&self) -> Diagram {
        parse_pd(self.pd).expect("catalog entries parse")
    }

    pub fn expected_conway(&self) -> LaurentPoly {
        LaurentPoly::parse(self.conway, "z").expect("catalog polynomial parses")
    }

    /// Recomputes the stored invariants from the PD text.
    pub fn check(&self) -> Result<(), CatalogCheckError> {
        let name = self.name;
        let d = parse_pd(self.pd).map_err(|source| CatalogCheckError::Parse { name, source })?;
        let mismatch = |what, expected: String, got: String| {
            Err(CatalogCheckError::Mismatch { name, what, expected, got })
        };
        if d.component_count() != self.components {
            return mismatch("components", self.components.to_string(), d.component_count().to_string());
        }
        let nabla = skein::conway(&d);
        if nabla != self.expected_conway() {
            return mismatch("conway", self.conway.to_string(), nabla.render("z"));
        }
        let lk = splitting::linking_matrix(&d);
        let upper = lk.upper_triangle();
        if upper != self.linking {
            return mismatch("linking", format!("{:?}", self.linking), format!("{upper:?}"));
        }
        Ok(())
    }
}

impl fmt::Display for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}\t{}", self.name, self.pd, self.description)
    }
}

pub static CATALOG: &[CatalogEntry] = &[
    CatalogEntry {
        name: "unknot",
        description: "trivial knot",
        pd: "O",
        components: 1,
        conway: "1",
        linking: &[],
    },
    CatalogEntry {
        name: "unlink2",
        description: "2-component trivial link",
        pd: "O;O",
        components: 2,
        conway: "0",
        linking: &[0],
    },
    CatalogEntry {
        name: "unlink3",
        description: "3-component trivial link",
        pd: "O;O;O",
        components: 3,
        conway: "0",
        linking: &[0, 0, 0],
    },
    CatalogEntry {
        name: "hopf+",
        description: "positive Hopf link",
        pd: "X[1,3,2,4];X[3,1,4,2]",
        components: 2,
        conway: "z",
        linking: &[1],
    },
    CatalogEntry {
        name: "hopf-",
        description: "negative Hopf link (L2a1)",
        pd: "X[4,1,3,2];X[2,3,1,4]",
        components: 2,
        conway: "-z",
        linking: &[-1],
    },
    CatalogEntry {
        name: "3_1",
        description: "right-handed trefoil",
        pd: "X[1,5,2,4];X[3,1,4,6];X[5,3,6,2]",
        components: 1,
        conway: "1 + z^2",
        linking: &[],
    },
    CatalogEntry {
        name: "4_1",
        description: "figure-eight knot",
        pd: "X[4,2,5,1];X[8,6,1,5];X[6,3,7,4];X[2,7,3,8]",
        components: 1,
        conway: "1 - z^2",
        linking: &[],
    },
    CatalogEntry {
        name: "5_1",
        description: "cinquefoil",
        pd: "X[1,6,2,7];X[3,8,4,9];X[5,10,6,1];X[7,2,8,3];X[9,4,10,5]",
        components: 1,
        conway: "1 + 3*z^2 + z^4",
        linking: &[],
    },
    CatalogEntry {
        name: "5_2",
        description: "three-twist knot",
        pd: "X[1,4,2,5];X[3,8,4,9];X[5,10,6,1];X[9,6,10,7];X[7,2,8,3]",
        components: 1,
        conway: "1 + 2*z^2",
        linking: &[],
    },
    CatalogEntry {
        name: "borromean",
        description: "Borromean rings (L6a4)",
        pd: "X[6,1,7,2];X[12,8,9,7];X[4,12,1,11];X[10,5,11,6];X[8,4,5,3];X[2,9,3,10]",
        components: 3,
        conway: "z^4",
        linking: &[0, 0, 0],
    },
    CatalogEntry {
        name: "5^2_1",
        description: "Whitehead link (L5a1)",
        pd: "X[6,1,7,2];X[10,7,5,8];X[4,5,1,6];X[2,10,3,9];X[8,4,9,3]",
        components: 2,
        conway: "z^3",
        linking: &[0],
    },
    CatalogEntry {
        name: "7^2_6",
        description: "trefoil with one component-lassoing; 2 components, linking number 0",
        pd: "X[1,11,2,14];X[5,1,6,10];X[7,2,8,3];X[3,12,4,13];X[9,5,10,4];X[13,6,14,7];X[11,9,12,8]",
        components: 2,
        conway: "z^3 + z^5",
        linking: &[0],
    },
];

pub fn catalog_names() -> Vec<String> {
    CATALOG.iter().map(|e| e.name.to_string()).collect()
}

pub fn catalog_entry(name: &str) -> Result<&'static CatalogEntry, ParseError> {
    CATALOG
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| ParseError::UnknownCatalog { name: name.to_string(), available: catalog_names() })
}

/// The fixture diagram registered under `name`.
pub fn catalog(name: &str) -> Result<Diagram, ParseError> {
    Ok(catalog_entry(name)?.diagram())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let t = parse_pd("X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]").unwrap();
        assert_eq!(t.crossing_count(), 3);
        assert_eq!(t.component_count(), 1);
        let u = parse_pd("O;O").unwrap();
        assert_eq!(u.component_count(), 2);
        assert_eq!(u.crossing_count(), 0);
        assert!(matches!(parse_pd("X[1,2,3]"), Err(ParseError::Syntax { pos: 7, .. })));
    }

    #[test]
    fn whitespace_insensitive() {
        let a = parse_pd(" X [ 1 , 4,2,5 ] ;\tX[3,6,4,1]; X[5,2,6,3] ").unwrap();
        let b = parse_pd("X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn syntax_errors_are_positioned() {
        for (text, pos) in [("", 0), ("X", 1), ("X[1,2,3,4", 9), ("O;", 2), ("O O", 2), ("Y[1,2,3,4]", 0)] {
            match parse_pd(text) {
                Err(ParseError::Syntax { pos: p, .. }) => assert_eq!(p, pos, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn unpaired_arc_is_reported() {
        let err = parse_pd("X[1,4,2,5];X[3,6,4,1];X[5,2,6,7]").unwrap_err();
        let ParseError::Invalid(report) = err else { panic!("{err:?}") };
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, crate::diagram::Violation::UnpairedArc { arc: 3, occurrences: 1 })));
    }

    #[test]
    fn file_format() {
        let text = "# fixtures\nX[1,4,2,5];X[3,6,4,1];X[5,2,6,3]  # trefoil\n\nO;O\n";
        let ds = parse_pd_file(text).unwrap();
        assert_eq!(ds.len(), 2);
        let err = parse_pd_file("O\nX[1]\n").unwrap_err();
        assert!(matches!(err, ParseError::Line { line: 2, .. }));
    }

    #[test]
    fn serialize_free_loop() {
        assert_eq!(serialize_pd(&parse_pd("O").unwrap()), "O");
    }

    #[test]
    fn unknown_catalog_lists_names() {
        let err = catalog("8_19").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("3_1") && msg.contains("borromean"), "{msg}");
    }
}
