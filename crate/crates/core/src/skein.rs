//! Conway polynomial by skein-tree resolution.
//!
//! Uses `∇(L₊) − ∇(L₋) = z·∇(L₀)` with `∇(unknot) = 1`. Each node walks the
//! components in index order from their smallest arc label; the first crossing
//! reached along its under-strand is switched and smoothed. A diagram with no
//! such crossing is descending, hence a split union of unknots.

use std::collections::HashMap;

use crate::diagram::{CrossingId, Diagram, Sign};
use crate::laurent::LaurentPoly;

/// First crossing met on its under-strand before its over-strand, walking
/// components in index order from their basepoints.
pub fn first_descending_violation(d: &Diagram) -> Option<CrossingId> {
    let heads = d.heads();
    let mut visited = vec![false; d.crossing_count()];
    for comp in d.components() {
        for arc in comp.arcs {
            let h = heads[&arc];
            if !visited[h.crossing] {
                visited[h.crossing] = true;
                if h.slot == 0 {
                    return Some(h.crossing);
                }
            }
        }
    }
    None
}

/// Memoizing skein evaluator. Results are keyed on the canonical form of the
/// diagram, so the cache only ever returns values of the same invariant.
#[derive(Default)]
pub struct SkeinEngine {
    memo: HashMap<Diagram, LaurentPoly>,
    nodes: u64,
}

impl SkeinEngine {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of skein nodes expanded so far.
    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    pub fn conway(&mut self, d: &Diagram) -> LaurentPoly {
        let d = d.simplify();
        if d.is_empty() || d.split_piece_count() > 1 {
            return LaurentPoly::zero();
        }
        if d.crossing_count() == 0 {
            return LaurentPoly::one();
        }
        let key = d.canonical_form();
        if let Some(p) = self.memo.get(&key) {
            return p.clone();
        }
        self.nodes += 1;
        let value = match first_descending_violation(&d) {
            None if d.component_count() == 1 => LaurentPoly::one(),
            None => LaurentPoly::zero(),
            Some(c) => {
                let sign = d.crossings()[c].sign();
                let switched = self.conway(&d.crossing_change(c).expect("crossing exists"));
                let smoothed = self.conway(&d.smooth(c).expect("crossing exists"));
                let z_smoothed = smoothed.scale_by_monomial(1, 1).expect("nonzero");
                match sign {
                    Sign::Positive => &switched + &z_smoothed,
                    Sign::Negative => &switched - &z_smoothed,
                }
            }
        };
        self.memo.insert(key, value.clone());
        value
    }
}

/// Conway polynomial `∇(L; z)`.
pub fn conway(d: &Diagram) -> LaurentPoly {
    SkeinEngine::new().conway(d)
}

/// One-variable Alexander polynomial, as the unit-normalized representative.
pub fn alexander(d: &Diagram) -> LaurentPoly {
    conway(d)
        .conway_to_alexander()
        .expect("Conway polynomials of links have single-parity exponents")
}

pub fn is_conway_nonzero(d: &Diagram) -> bool {
    !conway(d).is_zero()
}
