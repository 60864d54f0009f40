//! Linking matrices, warp-linking degree, and bounds on the complete
//! splitting number.
//!
//! Nothing here claims to compute `split(L)` outright. A value is reported
//! as exact only when a lower-bound rule meets an upper-bound witness.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{Arc, CrossingId, Diagram};
use crate::moves::TransformLog;
use crate::skein;

/// Pairwise linking numbers; `entry(i, j)` is half the signed count of
/// crossings between components `i` and `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkingMatrix {
    size: usize,
    entries: Vec<i64>,
}

impl LinkingMatrix {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.size + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.size.max(1)).take(self.size).map(<[i64]>::to_vec).collect()
    }

    /// Entries `(i, j)` with `i < j`, row by row.
    pub fn upper_triangle(&self) -> Vec<i64> {
        let mut out = Vec::new();
        for i in 0..self.size {
            for j in i + 1..self.size {
                out.push(self.entry(i, j));
            }
        }
        out
    }

    /// `ℓ = Σ_{i<j} |Link(L_i, L_j)|`, the number of lassoings needed to kill
    /// every linking number.
    pub fn lasso_budget(&self) -> i64 {
        self.upper_triangle().iter().map(|v| v.abs()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&v| v == 0)
    }
}

impl fmt::Display for LinkingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| format!("[{}]", r.iter().map(i64::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

pub fn linking_matrix(d: &Diagram) -> LinkingMatrix {
    let n = d.component_count();
    let mut twice = vec![0i64; n * n];
    for (c, (under, over)) in d.crossings().iter().zip(d.crossing_components()) {
        if under != over {
            let s = c.sign().as_i64();
            twice[under * n + over] += s;
            twice[over * n + under] += s;
        }
    }
    debug_assert!(twice.iter().all(|v| v % 2 == 0), "odd signed crossing count between components");
    LinkingMatrix { size: n, entries: twice.into_iter().map(|v| v / 2).collect() }
}

pub fn is_algebraically_completely_splittable(d: &Diagram) -> bool {
    linking_matrix(d).is_zero()
}

/// `over[i][j]` = number of crossings where component `i` passes over `j`.
pub fn over_crossing_matrix(d: &Diagram) -> Vec<Vec<usize>> {
    let n = d.component_count();
    let mut m = vec![vec![0usize; n]; n];
    for (under, over) in d.crossing_components() {
        if under != over {
            m[over][under] += 1;
        }
    }
    m
}

/// Largest component count handled by [`warp_linking_degree`].
pub const MAX_LD_COMPONENTS: usize = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SplitError {
    #[error("{0} components exceeds the ordering search limit of {MAX_LD_COMPONENTS}")]
    TooManyComponents(usize),
    #[error("the base link has zero Conway polynomial; the lassoing lower bound does not apply")]
    ConwayZeroBase,
}

/// Warp-linking degree: the fewest non-self crossing changes that stack the
/// components in layers, minimised over all stacking orders.
///
/// Minimises over orders with a dynamic program on the set of components
/// already placed on top, which visits each subset once instead of every
/// permutation.
pub fn warp_linking_degree(d: &Diagram) -> Result<usize, SplitError> {
    let m = over_crossing_matrix(d);
    let n = m.len();
    if n > MAX_LD_COMPONENTS {
        return Err(SplitError::TooManyComponents(n));
    }
    let full = 1usize << n;
    let mut best = vec![usize::MAX; full];
    best[0] = 0;
    for placed in 0..full {
        if best[placed] == usize::MAX {
            continue;
        }
        for next in (0..n).filter(|&j| placed & (1 << j) == 0) {
            // `next` goes below everything placed; any crossing where it
            // passes over a placed component must be changed
            let cost: usize = (0..n).filter(|&i| placed & (1 << i) != 0).map(|i| m[next][i]).sum();
            let candidate = best[placed] + cost;
            let slot = &mut best[placed | (1 << next)];
            *slot = (*slot).min(candidate);
        }
    }
    Ok(best[full - 1])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundRule {
    /// `split ≥ 0`.
    Trivial,
    /// `split(L) ≥ n − 1` when `∇(L) ≠ 0`.
    ConwayNonzeroLower,
    /// `split(L) ≥ r + s − 1` for `r` lassoings of an `s`-component link
    /// with nonzero Conway polynomial.
    Theorem1Lower,
    /// `split(D) ≤ ld(D)`.
    LdUpper,
    /// `split(L) ≤ r + split(K)`.
    Theorem1Upper,
    /// A crossing-change set found by search leaves a layered diagram after
    /// reduction. Sound but incomplete.
    SearchUpper,
}

impl BoundRule {
    pub fn tag(self) -> &'static str {
        match self {
            BoundRule::Trivial => "trivial-lower",
            BoundRule::ConwayNonzeroLower => "conway-nonzero-lower",
            BoundRule::Theorem1Lower => "theorem-1-lower",
            BoundRule::LdUpper => "ld-upper",
            BoundRule::Theorem1Upper => "theorem-1-upper",
            BoundRule::SearchUpper => "search-upper",
        }
    }
}

impl fmt::Display for BoundRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bound {
    pub value: usize,
    pub rule: BoundRule,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UpperWitness {
    pub bound: Bound,
    /// Crossings to change, when the bound came from search.
    pub changes: Option<Vec<CrossingId>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SplitBounds {
    pub lower: Bound,
    pub upper: Bound,
}

impl SplitBounds {
    pub fn new(lower: Bound, upper: Bound) -> Self {
        debug_assert!(lower.value <= upper.value, "lower bound exceeds upper bound");
        Self { lower, upper }
    }

    pub fn exact(&self) -> bool {
        self.lower.value == self.upper.value
    }
}

impl fmt::Display for SplitBounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "lower={} ({}) upper={} ({}) exact={}",
            self.lower.value,
            self.lower.rule,
            self.upper.value,
            self.upper.rule,
            self.exact()
        )
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

/// Whether component `index` bounds a disk missed by the rest of the link.
///
/// The component must have no self-crossings, so its shadow is a simple
/// closed curve. On one side of it, every strand piece is classified as
/// above or below the curve by the crossings where it enters and leaves,
/// and wherever an above piece meets a below piece inside, the above piece
/// must be on top. The flat disk at an intermediate height then misses the
/// link, so the component is an unknot split from everything else.
fn bounds_empty_disk(d: &Diagram, index: usize) -> bool {
    let comps = d.components();
    let Some(comp) = comps.get(index).filter(|c| !c.is_free_loop()) else {
        return false;
    };
    let mine: HashSet<Arc> = comp.arcs.iter().copied().collect();
    let crossings = d.crossings();
    if crossings.iter().any(|c| mine.contains(&c.under_in()) && mine.contains(&c.over_in())) {
        return false;
    }

    let faces = d.faces();
    let mut face_of: HashMap<(CrossingId, usize), usize> = HashMap::new();
    for (f, darts) in faces.iter().enumerate() {
        for e in darts {
            face_of.insert((e.crossing, e.slot), f);
        }
    }
    let ends = d.endpoints();
    let sides = |arc: Arc| {
        let occ = &ends[&arc];
        (face_of[&(occ[0].crossing, occ[0].slot)], face_of[&(occ[1].crossing, occ[1].slot)])
    };
    let mut regions = UnionFind::new(faces.len());
    for &arc in ends.keys() {
        if !mine.contains(&arc) {
            let (a, b) = sides(arc);
            regions.union(a, b);
        }
    }
    let (left, right) = sides(comp.arcs[0]);
    let (left, right) = (regions.find(left), regions.find(right));
    if left == right {
        return false;
    }

    [left, right].into_iter().any(|side| {
        let mut inside = |arc: Arc| !mine.contains(&arc) && regions.find(sides(arc).0) == side;
        // pieces: inside arcs joined along strands through inside crossings
        let arcs: Vec<Arc> = ends.keys().copied().filter(|&a| inside(a)).collect();
        let idx: HashMap<Arc, usize> = arcs.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let mut pieces = UnionFind::new(arcs.len());
        let mut contacts = Vec::new();
        let mut meetings = Vec::new();
        for c in crossings {
            let [a0, a1, a2, a3] = c.arcs();
            if mine.contains(&c.under_in()) {
                // strand passes over the curve
                let x = if inside(a1) { a1 } else { a3 };
                if inside(x) {
                    contacts.push((idx[&x], true));
                }
            } else if mine.contains(&c.over_in()) {
                let x = if inside(a0) { a0 } else { a2 };
                if inside(x) {
                    contacts.push((idx[&x], false));
                }
            } else if inside(a0) {
                pieces.union(idx[&a0], idx[&a2]);
                pieces.union(idx[&a1], idx[&a3]);
                meetings.push((idx[&a1], idx[&a0]));
            }
        }
        let mut level: HashMap<usize, bool> = HashMap::new();
        for (x, above) in contacts {
            let p = pieces.find(x);
            if *level.entry(p).or_insert(above) != above {
                return false;
            }
        }
        // an over piece below forces the under piece below; an under piece
        // above forces the over piece above
        let meetings: Vec<(usize, usize)> =
            meetings.into_iter().map(|(o, u)| (pieces.find(o), pieces.find(u))).filter(|(o, u)| o != u).collect();
        let mut changed = true;
        while changed {
            changed = false;
            for &(o, u) in &meetings {
                match (level.get(&o).copied(), level.get(&u).copied()) {
                    (Some(false), Some(true)) => return false,
                    (Some(false), None) => {
                        level.insert(u, false);
                        changed = true;
                    }
                    (None, Some(true)) => {
                        level.insert(o, true);
                        changed = true;
                    }
                    _ => {}
                }
            }
        }
        true
    })
}

/// Reidemeister I/II reduction interleaved with splitting off components
/// that bound empty disks (each becomes a free loop).
pub fn reduce_for_splitting(d: &Diagram) -> Diagram {
    let mut cur = d.simplify();
    'outer: loop {
        for i in 0..cur.component_count() {
            if bounds_empty_disk(&cur, i) {
                cur = cur.delete_component(i).with_free_loops(1).simplify();
                continue 'outer;
            }
        }
        return cur;
    }
}

fn subsets(n: usize, k: usize, mut visit: impl FnMut(&[usize]) -> bool) -> bool {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return visit(cur);
        }
        for i in start..n {
            cur.push(i);
            if rec(i + 1, n, k, cur, visit) {
                return true;
            }
            cur.pop();
        }
        false
    }
    rec(0, n, k, &mut Vec::with_capacity(k), &mut visit)
}

/// Upper bound for `split(D)`: the smaller of `ld(D)` and the smallest
/// crossing-change set of size at most `budget` after which the
/// reduced diagram (see [`reduce_for_splitting`]) is layered.
///
/// When the search finds nothing within the budget, the bound is `ld(D)`.
pub fn split_diagram_upper(d: &Diagram, budget: usize) -> Result<UpperWitness, SplitError> {
    let ld = warp_linking_degree(d)?;
    let mut best = UpperWitness { bound: Bound { value: ld, rule: BoundRule::LdUpper }, changes: None };
    let n = d.crossing_count();
    for k in 0..=budget.min(n) {
        if k >= best.bound.value {
            break;
        }
        let mut found = None;
        subsets(n, k, |set| {
            let mut e = d.clone();
            for &c in set {
                e = e.crossing_change(c).expect("crossing exists");
            }
            let layered = warp_linking_degree(&reduce_for_splitting(&e)).map(|v| v == 0).unwrap_or(false);
            if layered {
                found = Some(set.to_vec());
            }
            layered
        });
        if let Some(set) = found {
            best = UpperWitness { bound: Bound { value: k, rule: BoundRule::SearchUpper }, changes: Some(set) };
            break;
        }
    }
    Ok(best)
}

/// `n − 1` when `∇ ≠ 0` for an `n`-component diagram, else 0.
pub fn split_lower(d: &Diagram) -> Bound {
    let n = d.component_count();
    if n > 0 && skein::is_conway_nonzero(d) {
        Bound { value: n - 1, rule: BoundRule::ConwayNonzeroLower }
    } else {
        Bound { value: 0, rule: BoundRule::Trivial }
    }
}

/// Diagram-only bounds: the Conway lower bound against the search/ld upper
/// bound.
pub fn split_bounds(d: &Diagram, budget: usize) -> Result<SplitBounds, SplitError> {
    Ok(SplitBounds::new(split_lower(d), split_diagram_upper(d, budget)?.bound))
}

/// Bounds for a link obtained by `r` lassoings from an `s`-component base
/// with nonzero Conway polynomial: `r + s − 1 ≤ split(L) ≤ r + split(K)`,
/// where `base_bounds.upper` stands in for `split(K)`.
pub fn split_bounds_from_log(log: &TransformLog, base_bounds: &SplitBounds) -> Result<SplitBounds, SplitError> {
    if !skein::is_conway_nonzero(log.base()) {
        return Err(SplitError::ConwayZeroBase);
    }
    let r = log.lasso_count();
    let s = log.base_components();
    let lower = Bound { value: r + s - 1, rule: BoundRule::Theorem1Lower };
    let upper = Bound { value: r + base_bounds.upper.value, rule: BoundRule::Theorem1Upper };
    Ok(SplitBounds::new(lower, upper))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pdparse::catalog;

    #[test]
    fn linking_examples() {
        let h = linking_matrix(&catalog("hopf+").unwrap());
        assert_eq!(h.rows(), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(h.lasso_budget(), 1);
        assert!(linking_matrix(&catalog("unlink3").unwrap()).is_zero());
        assert_eq!(linking_matrix(&catalog("hopf-").unwrap()).entry(0, 1), -1);
        assert_eq!(h.to_string(), "[[0,1],[1,0]]");
    }

    #[test]
    fn algebraic_splittability() {
        assert!(is_algebraically_completely_splittable(&catalog("borromean").unwrap()));
        assert!(!is_algebraically_completely_splittable(&catalog("hopf+").unwrap()));
        assert!(is_algebraically_completely_splittable(&catalog("5_2").unwrap()));
    }

    #[test]
    fn warp_linking_examples() {
        assert_eq!(warp_linking_degree(&catalog("unlink2").unwrap()).unwrap(), 0);
        assert_eq!(warp_linking_degree(&catalog("hopf+").unwrap()).unwrap(), 1);
        // each pair of rings clasps with the same ring on top twice
        assert_eq!(over_crossing_matrix(&catalog("borromean").unwrap()), vec![vec![0, 2, 0], vec![0, 0, 2], vec![2, 0, 0]]);
        assert_eq!(warp_linking_degree(&catalog("borromean").unwrap()).unwrap(), 2);
        assert_eq!(warp_linking_degree(&catalog("3_1").unwrap()).unwrap(), 0);
    }

    #[test]
    fn diagram_upper_examples() {
        let h = split_diagram_upper(&catalog("hopf+").unwrap(), 2).unwrap();
        assert_eq!(h.bound.value, 1);
        let b = split_diagram_upper(&catalog("borromean").unwrap(), 3).unwrap();
        assert_eq!(b.bound.value, 2, "{b:?}");
        let w = split_diagram_upper(&catalog("7^2_6").unwrap(), 3).unwrap();
        assert_eq!(w.bound, Bound { value: 1, rule: BoundRule::SearchUpper });
        assert_eq!(w.changes.as_ref().map(Vec::len), Some(1));
        let u = split_diagram_upper(&catalog("unlink2").unwrap(), 3).unwrap();
        assert_eq!(u.bound.value, 0);
    }

    fn ld_by_permutations(d: &Diagram) -> usize {
        fn perms(items: Vec<usize>) -> Vec<Vec<usize>> {
            if items.len() <= 1 {
                return vec![items];
            }
            let mut out = Vec::new();
            for i in 0..items.len() {
                let mut rest = items.clone();
                let head = rest.remove(i);
                for mut p in perms(rest) {
                    p.insert(0, head);
                    out.push(p);
                }
            }
            out
        }
        let m = over_crossing_matrix(d);
        perms((0..m.len()).collect())
            .into_iter()
            .map(|order| {
                let mut v = 0;
                for (a, &top) in order.iter().enumerate() {
                    for &below in &order[a + 1..] {
                        v += m[below][top];
                    }
                }
                v
            })
            .min()
            .unwrap_or(0)
    }

    #[test]
    fn ld_matches_permutation_oracle() {
        for e in crate::pdparse::CATALOG {
            let d = e.diagram();
            assert_eq!(warp_linking_degree(&d).unwrap(), ld_by_permutations(&d), "{}", e.name);
            for c in 0..d.crossing_count() {
                let (l, _) = crate::moves::lasso(&d, c).unwrap();
                assert_eq!(warp_linking_degree(&l).unwrap(), ld_by_permutations(&l), "{} lasso {c}", e.name);
            }
        }
    }

    #[test]
    fn disk_release_keeps_nonsplit_links() {
        for name in ["hopf+", "borromean", "5^2_1", "7^2_6"] {
            let d = catalog(name).unwrap();
            let r = reduce_for_splitting(&d);
            assert_eq!(r.free_loops(), 0, "{name}");
        }
        // the sandwiched loop left by undoing a lasso's crossing change splits off
        let d = catalog("7^2_6").unwrap();
        let undone = d.crossing_change(2).unwrap();
        assert_eq!(reduce_for_splitting(&undone).free_loops(), 1);
    }

    #[test]
    fn lower_examples() {
        assert_eq!(split_lower(&catalog("borromean").unwrap()).value, 2);
        assert_eq!(split_lower(&catalog("unlink2").unwrap()), Bound { value: 0, rule: BoundRule::Trivial });
        assert_eq!(split_lower(&catalog("7^2_6").unwrap()).value, 1);
    }

    #[test]
    fn report_line_format() {
        let b = SplitBounds::new(
            Bound { value: 2, rule: BoundRule::Theorem1Lower },
            Bound { value: 2, rule: BoundRule::Theorem1Upper },
        );
        assert_eq!(b.to_string(), "lower=2 (theorem-1-lower) upper=2 (theorem-1-upper) exact=true");
    }
}
