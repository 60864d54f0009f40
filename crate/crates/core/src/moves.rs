//! Lassoing and its relatives as PD rewrites, plus the provenance log that
//! records them.
//!
//! A lasso at crossing `p` changes `p` and adds a small loop around it that
//! meets the four arc ends at `p` once each, passing alternately over and
//! under. The loop runs counterclockwise around `p`; it passes over the
//! strand that is on top after the change and under the other one, so the
//! three layers (loop, new over-strand, new under-strand) are cyclic.

use std::fmt;

use thiserror::Error;

use crate::diagram::{Arc, Crossing, CrossingId, Diagram, DiagramError, Sign};
use crate::pdparse::{self, ParseError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MoveError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("crossing {0} joins two different components; component-lassoing needs a self-crossing")]
    NotSelfCrossing(CrossingId),
    #[error("log step {0} does not exist")]
    UnknownStep(usize),
    #[error("log step {0} is not a lassoing")]
    NotALasso(usize),
    #[error("lasso from step {step} is touched by later step {later}")]
    Entangled { step: usize, later: usize },
    #[error("malformed log: {0}")]
    Malformed(String),
}

/// Number of crossings a lasso adds.
pub const LASSO_CROSSINGS: usize = 4;

/// Lassoing at crossing `id`. Returns the new diagram and the index of the
/// created component.
///
/// The four new crossings are appended after the existing ones, in the
/// counterclockwise order of the slots they sit on; crossing `id` keeps its
/// index. Fresh arc labels continue from the largest existing label.
pub fn lasso(d: &Diagram, id: CrossingId) -> Result<(Diagram, usize), MoveError> {
    let centre = *d.crossing(id)?;
    let report = d.validate();
    if !report.is_valid() {
        return Err(DiagramError::Invalid(report).into());
    }
    let base = d.max_arc().expect("diagram has a crossing");
    // inner pieces between the loop and the centre, then the loop arcs;
    // loop arc k runs from the loop crossing on slot k to the one on slot k+1
    let inner: [Arc; 4] = std::array::from_fn(|k| base + 1 + k as Arc);
    let loop_arcs: [Arc; 4] = std::array::from_fn(|k| base + 5 + k as Arc);
    let outer = centre.arcs();

    let mut crossings: Vec<Crossing> = d.crossings().to_vec();
    crossings[id] = Crossing::new(inner, centre.sign()).changed();

    for k in 0..4 {
        let (x, e) = (outer[k], inner[k]);
        let (l_in, l_out) = (loop_arcs[(k + 3) % 4], loop_arcs[k]);
        let inward = centre.is_incoming(k);
        // slots 0 and 2 carry the old under-strand, which ends up on top
        let crossing = if k % 2 == 0 {
            if inward {
                Crossing::new([x, l_out, e, l_in], Sign::Positive)
            } else {
                Crossing::new([e, l_in, x, l_out], Sign::Negative)
            }
        } else {
            let sign = if inward { Sign::Negative } else { Sign::Positive };
            Crossing::new([l_in, x, l_out, e], sign)
        };
        crossings.push(crossing);
    }
    let out = Diagram::new(crossings, d.free_loops())?;
    let created = out.component_of_arcs()[&loop_arcs[0]];
    Ok((out, created))
}

/// Lassoing at a self-crossing.
pub fn component_lasso(d: &Diagram, id: CrossingId) -> Result<(Diagram, usize), MoveError> {
    if !d.is_self_crossing(id)? {
        return Err(MoveError::NotSelfCrossing(id));
    }
    lasso(d, id)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoveKind {
    Lasso,
    ComponentLasso,
    CrossingChange,
}

impl MoveKind {
    pub fn is_lasso(self) -> bool {
        matches!(self, MoveKind::Lasso | MoveKind::ComponentLasso)
    }

    fn keyword(self) -> &'static str {
        match self {
            MoveKind::Lasso => "lasso",
            MoveKind::ComponentLasso => "component-lasso",
            MoveKind::CrossingChange => "change",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub kind: MoveKind,
    pub crossing: CrossingId,
    /// Component created by a lassoing, as indexed in the diagram right after
    /// the step.
    pub created: Option<usize>,
    /// First crossing id the step added.
    first_new: CrossingId,
}

impl Step {
    fn added(&self) -> std::ops::Range<CrossingId> {
        if self.kind.is_lasso() {
            self.first_new..self.first_new + LASSO_CROSSINGS
        } else {
            self.first_new..self.first_new
        }
    }
}

/// Where the base diagram of a log came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseSource {
    Catalog(String),
    Inline,
}

/// Append-only record of moves applied to a base diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformLog {
    base: Diagram,
    source: BaseSource,
    base_components: usize,
    steps: Vec<Step>,
    current: Diagram,
}

impl TransformLog {
    pub fn new(base: Diagram) -> Self {
        Self::with_source(base, BaseSource::Inline)
    }

    pub fn from_catalog(name: &str) -> Result<Self, ParseError> {
        Ok(Self::with_source(pdparse::catalog(name)?, BaseSource::Catalog(name.to_string())))
    }

    fn with_source(base: Diagram, source: BaseSource) -> Self {
        Self { base_components: base.component_count(), current: base.clone(), base, source, steps: Vec::new() }
    }

    pub fn base(&self) -> &Diagram {
        &self.base
    }

    pub fn source(&self) -> &BaseSource {
        &self.source
    }

    /// Component count `s` of the base link.
    pub fn base_components(&self) -> usize {
        self.base_components
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn current(&self) -> &Diagram {
        &self.current
    }

    /// Number of lassoings `r`.
    pub fn lasso_count(&self) -> usize {
        self.steps.iter().filter(|s| s.kind.is_lasso()).count()
    }

    pub fn apply(&mut self, kind: MoveKind, crossing: CrossingId) -> Result<&Diagram, MoveError> {
        let first_new = self.current.crossing_count();
        let (next, created) = match kind {
            MoveKind::Lasso => {
                let (d, c) = lasso(&self.current, crossing)?;
                (d, Some(c))
            }
            MoveKind::ComponentLasso => {
                let (d, c) = component_lasso(&self.current, crossing)?;
                (d, Some(c))
            }
            MoveKind::CrossingChange => (self.current.crossing_change(crossing)?, None),
        };
        self.steps.push(Step { kind, crossing, created, first_new });
        self.current = next;
        Ok(&self.current)
    }

    /// Rebuilds the current diagram from the base and the recorded moves.
    pub fn replay(&self) -> Result<Diagram, MoveError> {
        let mut fresh = Self { steps: Vec::new(), current: self.base.clone(), ..self.clone() };
        for s in &self.steps {
            fresh.apply(s.kind, s.crossing)?;
        }
        Ok(fresh.current)
    }

    /// Removes the lasso introduced at `step` and reverts its crossing
    /// change. Later steps are kept, with crossing ids shifted past the
    /// removed loop.
    pub fn anti_lasso(&self, step: usize) -> Result<TransformLog, MoveError> {
        let target = self.steps.get(step).ok_or(MoveError::UnknownStep(step))?;
        if !target.kind.is_lasso() {
            return Err(MoveError::NotALasso(step));
        }
        let added = target.added();
        let mut out = Self { steps: Vec::new(), current: self.base.clone(), ..self.clone() };
        for (i, s) in self.steps.iter().enumerate() {
            if i == step {
                continue;
            }
            let mut crossing = s.crossing;
            if i > step {
                if added.contains(&crossing) || crossing == target.crossing {
                    return Err(MoveError::Entangled { step, later: i });
                }
                if crossing >= added.end {
                    crossing -= LASSO_CROSSINGS;
                }
            }
            out.apply(s.kind, crossing)?;
        }
        Ok(out)
    }

    pub fn to_text(&self) -> String {
        let mut out = match &self.source {
            BaseSource::Catalog(name) => format!("base catalog {name}\n"),
            BaseSource::Inline => format!("base pd {}\n", pdparse::write_pd(&self.base)),
        };
        for s in &self.steps {
            out.push_str(&format!("{} {}\n", s.kind.keyword(), s.crossing));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<TransformLog, MoveError> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| MoveError::Malformed("missing base header".into()))?;
        let mut log = if let Some(name) = header.strip_prefix("base catalog ") {
            Self::from_catalog(name.trim()).map_err(|e| MoveError::Malformed(e.to_string()))?
        } else if let Some(pd) = header.strip_prefix("base pd ") {
            Self::new(pdparse::parse_pd(pd).map_err(|e| MoveError::Malformed(e.to_string()))?)
        } else {
            return Err(MoveError::Malformed(format!("bad header {header:?}")));
        };
        for line in lines {
            let (word, arg) = line
                .split_once(char::is_whitespace)
                .ok_or_else(|| MoveError::Malformed(format!("bad step {line:?}")))?;
            let kind = match word {
                "lasso" => MoveKind::Lasso,
                "component-lasso" => MoveKind::ComponentLasso,
                "change" => MoveKind::CrossingChange,
                _ => return Err(MoveError::Malformed(format!("unknown move {word:?}"))),
            };
            let crossing = arg
                .trim()
                .parse()
                .map_err(|_| MoveError::Malformed(format!("bad crossing id in {line:?}")))?;
            log.apply(kind, crossing)?;
        }
        Ok(log)
    }
}

impl fmt::Display for TransformLog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pdparse::catalog;
    use crate::skein::conway;

    #[test]
    fn lasso_adds_one_component_and_four_crossings() {
        for name in ["3_1", "hopf+", "4_1", "borromean"] {
            let d = catalog(name).unwrap();
            for c in 0..d.crossing_count() {
                let (out, created) = lasso(&d, c).unwrap();
                assert_eq!(out.crossing_count(), d.crossing_count() + 4);
                assert_eq!(out.component_count(), d.component_count() + 1);
                let comps = out.components();
                assert_eq!(comps[created].arcs.len(), 4);
            }
        }
    }

    #[test]
    fn lasso_crossings_have_no_self_crossings_on_the_loop() {
        let d = catalog("3_1").unwrap();
        let (out, created) = lasso(&d, 1).unwrap();
        let cc = out.crossing_components();
        assert!(cc.iter().all(|&(u, o)| !(u == created && o == created)));
    }

    #[test]
    fn component_lasso_rejects_inter_component_crossings() {
        let h = catalog("hopf+").unwrap();
        assert_eq!(component_lasso(&h, 0), Err(MoveError::NotSelfCrossing(0)));
        assert!(matches!(lasso(&h, 7), Err(MoveError::Diagram(DiagramError::UnknownCrossing { .. }))));
    }

    #[test]
    fn anti_lasso_restores_base() {
        let mut log = TransformLog::from_catalog("3_1").unwrap();
        log.apply(MoveKind::ComponentLasso, 0).unwrap();
        let back = log.anti_lasso(0).unwrap();
        assert_eq!(back.current(), log.base());
        assert_eq!(back.lasso_count(), 0);
    }

    #[test]
    fn anti_lasso_errors() {
        let mut log = TransformLog::from_catalog("3_1").unwrap();
        log.apply(MoveKind::CrossingChange, 1).unwrap();
        log.apply(MoveKind::Lasso, 0).unwrap();
        assert_eq!(log.anti_lasso(0).unwrap_err(), MoveError::NotALasso(0));
        assert_eq!(log.anti_lasso(5).unwrap_err(), MoveError::UnknownStep(5));
        log.apply(MoveKind::Lasso, 3).unwrap();
        assert_eq!(log.anti_lasso(1).unwrap_err(), MoveError::Entangled { step: 1, later: 2 });
    }

    #[test]
    fn anti_lasso_shifts_later_ids() {
        let mut log = TransformLog::from_catalog("3_1").unwrap();
        log.apply(MoveKind::ComponentLasso, 0).unwrap();
        log.apply(MoveKind::ComponentLasso, 1).unwrap();
        log.apply(MoveKind::CrossingChange, 8).unwrap();
        let out = log.anti_lasso(0).unwrap();
        assert_eq!(out.steps()[1].crossing, 4);
        assert_eq!(out.replay().unwrap(), *out.current());
        assert_eq!(out.current().component_count(), 2);
    }

    #[test]
    fn log_text_round_trip() {
        let mut log = TransformLog::from_catalog("3_1").unwrap();
        log.apply(MoveKind::ComponentLasso, 0).unwrap();
        log.apply(MoveKind::Lasso, 4).unwrap();
        let text = log.to_text();
        assert_eq!(text, "base catalog 3_1\ncomponent-lasso 0\nlasso 4\n");
        let back = TransformLog::from_text(&text).unwrap();
        assert_eq!(back, log);

        let inline = TransformLog::new(catalog("hopf+").unwrap());
        let back = TransformLog::from_text(&inline.to_text()).unwrap();
        assert_eq!(back.current(), inline.current());
        assert!(TransformLog::from_text("lasso 0").is_err());
        assert!(TransformLog::from_text("base catalog 3_1\nlasso x").is_err());
    }

    #[test]
    fn replay_matches_current() {
        let log = TransformLog::from_catalog("3_1").unwrap();
        assert_eq!(log.replay().unwrap(), catalog("3_1").unwrap());
        let mut log = log;
        log.apply(MoveKind::ComponentLasso, 0).unwrap();
        log.apply(MoveKind::ComponentLasso, 1).unwrap();
        let replayed = log.replay().unwrap();
        assert_eq!(&replayed, log.current());
        let z = conway(&replayed);
        assert!(z.eq_up_to_sign(&crate::LaurentPoly::from_terms([(6, 1), (8, 1)])));
    }
}
