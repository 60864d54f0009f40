//! Oriented link diagrams in planar-diagram (PD) form.
//!
//! A crossing lists its four incident arcs counterclockwise, starting with the
//! incoming under-strand. Slots 0 and 2 are the under-strand (in, out); slots
//! 1 and 3 the over-strand, whose direction is fixed by the crossing sign:
//! a positive crossing has the over-strand running from slot 3 to slot 1,
//! i.e. left to right when looking along the under-strand.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub type Arc = u32;
pub type CrossingId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Crossing {
    arcs: [Arc; 4],
    sign: Sign,
}

impl Crossing {
    pub fn new(arcs: [Arc; 4], sign: Sign) -> Self {
        Self { arcs, sign }
    }

    pub fn arcs(&self) -> [Arc; 4] {
        self.arcs
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn is_over_slot(slot: usize) -> bool {
        slot % 2 == 1
    }

    pub fn over_in_slot(&self) -> usize {
        match self.sign {
            Sign::Positive => 3,
            Sign::Negative => 1,
        }
    }

    pub fn over_out_slot(&self) -> usize {
        (self.over_in_slot() + 2) % 4
    }

    /// Whether the arc at `slot` ends (rather than starts) at this crossing.
    pub fn is_incoming(&self, slot: usize) -> bool {
        slot == 0 || slot == self.over_in_slot()
    }

    /// The slot where the strand entering at `slot` leaves.
    pub fn through(&self, slot: usize) -> usize {
        (slot + 2) % 4
    }

    pub fn under_in(&self) -> Arc {
        self.arcs[0]
    }

    pub fn under_out(&self) -> Arc {
        self.arcs[2]
    }

    pub fn over_in(&self) -> Arc {
        self.arcs[self.over_in_slot()]
    }

    pub fn over_out(&self) -> Arc {
        self.arcs[self.over_out_slot()]
    }

    /// The same crossing with over and under exchanged.
    pub fn changed(&self) -> Crossing {
        let [a, b, c, d] = self.arcs;
        match self.sign {
            // over runs d -> b; it becomes the under-strand entering at d
            Sign::Positive => Crossing::new([d, a, b, c], Sign::Negative),
            Sign::Negative => Crossing::new([b, c, d, a], Sign::Positive),
        }
    }

    fn relabeled(&self, f: impl Fn(Arc) -> Arc) -> Crossing {
        Crossing::new(self.arcs.map(f), self.sign)
    }
}

impl fmt::Display for Crossing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.arcs;
        write!(f, "X[{a},{b},{c},{d}]")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// An arc label must occur in exactly two crossing slots.
    UnpairedArc { arc: Arc, occurrences: usize },
    /// Both ends of the arc are incoming (or both outgoing).
    InconsistentOrientation { arc: Arc },
    /// A connected piece of the projection fails `V - E + F = 2`.
    NonPlanar { crossings: usize, faces: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnpairedArc { arc, occurrences } => {
                write!(f, "arc {arc} occurs {occurrences} time(s), expected 2")
            }
            Violation::InconsistentOrientation { arc } => {
                write!(f, "arc {arc} has inconsistent orientation at its two ends")
            }
            Violation::NonPlanar { crossings, faces } => write!(
                f,
                "piece with {crossings} crossing(s) has {faces} face(s), expected {}",
                crossings + 2
            ),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        let msgs: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", msgs.join("; "))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("unknown crossing id {id} (diagram has {count} crossings)")]
    UnknownCrossing { id: CrossingId, count: usize },
    #[error("invalid diagram: {0}")]
    Invalid(ValidationReport),
}

/// One closed oriented strand. Free loops have no arcs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub arcs: Vec<Arc>,
}

impl Component {
    pub fn is_free_loop(&self) -> bool {
        self.arcs.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Endpoint {
    pub crossing: CrossingId,
    pub slot: usize,
}

/// An oriented link diagram. Values are immutable; every rewrite returns a
/// new diagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    free_loops: usize,
}

impl Diagram {
    pub fn empty() -> Self {
        Self { crossings: Vec::new(), free_loops: 0 }
    }

    pub fn unlink(n: usize) -> Self {
        Self { crossings: Vec::new(), free_loops: n }
    }

    /// Builds a diagram from oriented crossings, rejecting invalid input.
    pub fn new(crossings: Vec<Crossing>, free_loops: usize) -> Result<Self, DiagramError> {
        let d = Self { crossings, free_loops };
        let report = d.validate();
        if report.is_valid() {
            Ok(d)
        } else {
            Err(DiagramError::Invalid(report))
        }
    }

    pub(crate) fn from_parts(crossings: Vec<Crossing>, free_loops: usize) -> Self {
        let d = Self { crossings, free_loops };
        debug_assert!(d.validate().is_valid(), "rewrite produced invalid diagram: {}", d.validate());
        d
    }

    /// Builds a diagram from bare PD quadruples, recovering each over-strand's
    /// direction from the orientation of the arcs around it.
    ///
    /// Directions that cannot be propagated from under-strands (a component
    /// that never passes under) follow the consecutive-label convention of
    /// the standard tables: the over-strand runs from label `j` to `j + 1`,
    /// wrapping from the largest label to the smallest.
    pub fn from_pd(quads: &[[Arc; 4]], free_loops: usize) -> Result<Self, DiagramError> {
        let mut report = ValidationReport::default();
        let mut occurrences: BTreeMap<Arc, Vec<Endpoint>> = BTreeMap::new();
        for (i, q) in quads.iter().enumerate() {
            for (slot, &a) in q.iter().enumerate() {
                occurrences.entry(a).or_default().push(Endpoint { crossing: i, slot });
            }
        }
        for (&arc, occ) in &occurrences {
            if occ.len() != 2 {
                report.violations.push(Violation::UnpairedArc { arc, occurrences: occ.len() });
            }
        }
        if !report.is_valid() {
            return Err(DiagramError::Invalid(report));
        }

        // incoming[crossing][slot]: Some(true) if the arc ends there
        let mut incoming: Vec<[Option<bool>; 4]> =
            quads.iter().map(|_| [Some(true), None, Some(false), None]).collect();
        let mut signs: Vec<Option<Sign>> = vec![None; quads.len()];

        let set_sign = |incoming: &mut Vec<[Option<bool>; 4]>, signs: &mut Vec<Option<Sign>>, c: usize, s: Sign| {
            signs[c] = Some(s);
            let over_in = if s == Sign::Positive { 3 } else { 1 };
            incoming[c][over_in] = Some(true);
            incoming[c][(over_in + 2) % 4] = Some(false);
        };

        loop {
            let mut changed = true;
            while changed {
                changed = false;
                for occ in occurrences.values() {
                    let (p, q) = (occ[0], occ[1]);
                    let (ip, iq) = (incoming[p.crossing][p.slot], incoming[q.crossing][q.slot]);
                    let (other, val) = match (ip, iq) {
                        (Some(v), None) => (q, v),
                        (None, Some(v)) => (p, v),
                        _ => continue,
                    };
                    let want_in = !val;
                    // `other` is an over slot of a crossing whose sign is unknown
                    let sign = match (other.slot, want_in) {
                        (1, true) | (3, false) => Sign::Negative,
                        _ => Sign::Positive,
                    };
                    set_sign(&mut incoming, &mut signs, other.crossing, sign);
                    changed = true;
                }
            }
            let Some(c) = signs.iter().position(Option::is_none) else {
                break;
            };
            let [_, b, _, d] = quads[c];
            let sign = if d == b.wrapping_add(1) || (b > d && b - d > 1) {
                Sign::Negative
            } else {
                Sign::Positive
            };
            set_sign(&mut incoming, &mut signs, c, sign);
        }

        let crossings = quads
            .iter()
            .zip(signs)
            .map(|(q, s)| Crossing::new(*q, s.expect("all signs resolved")))
            .collect();
        Self::new(crossings, free_loops)
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing(&self, id: CrossingId) -> Result<&Crossing, DiagramError> {
        self.crossings
            .get(id)
            .ok_or(DiagramError::UnknownCrossing { id, count: self.crossings.len() })
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty() && self.free_loops == 0
    }

    pub fn arcs(&self) -> BTreeSet<Arc> {
        self.crossings.iter().flat_map(|c| c.arcs).collect()
    }

    pub fn max_arc(&self) -> Option<Arc> {
        self.crossings.iter().flat_map(|c| c.arcs).max()
    }

    pub(crate) fn endpoints(&self) -> HashMap<Arc, Vec<Endpoint>> {
        let mut map: HashMap<Arc, Vec<Endpoint>> = HashMap::new();
        for (i, c) in self.crossings.iter().enumerate() {
            for (slot, &a) in c.arcs.iter().enumerate() {
                map.entry(a).or_default().push(Endpoint { crossing: i, slot });
            }
        }
        map
    }

    /// Head (incoming end) of every arc.
    pub(crate) fn heads(&self) -> HashMap<Arc, Endpoint> {
        let mut map = HashMap::new();
        for (i, c) in self.crossings.iter().enumerate() {
            for slot in 0..4 {
                if c.is_incoming(slot) {
                    map.insert(c.arcs[slot], Endpoint { crossing: i, slot });
                }
            }
        }
        map
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let ends = self.endpoints();
        let mut arcs: Vec<&Arc> = ends.keys().collect();
        arcs.sort();
        for &arc in arcs {
            let occ = &ends[&arc];
            if occ.len() != 2 {
                report.violations.push(Violation::UnpairedArc { arc, occurrences: occ.len() });
                continue;
            }
            let i0 = self.crossings[occ[0].crossing].is_incoming(occ[0].slot);
            let i1 = self.crossings[occ[1].crossing].is_incoming(occ[1].slot);
            if i0 == i1 {
                report.violations.push(Violation::InconsistentOrientation { arc });
            }
        }
        if !report.is_valid() {
            return report;
        }
        let faces = self.faces();
        let pieces = self.pieces();
        let mut face_count = vec![0usize; pieces.len()];
        let mut piece_of = vec![0usize; self.crossings.len()];
        for (p, members) in pieces.iter().enumerate() {
            for &c in members {
                piece_of[c] = p;
            }
        }
        for f in &faces {
            face_count[piece_of[f[0].crossing]] += 1;
        }
        for (p, members) in pieces.iter().enumerate() {
            if face_count[p] != members.len() + 2 {
                report
                    .violations
                    .push(Violation::NonPlanar { crossings: members.len(), faces: face_count[p] });
            }
        }
        report
    }

    /// Faces of the projection, each a cycle of darts. A dart
    /// `(crossing, slot)` leaves the crossing along the arc in that slot.
    pub(crate) fn faces(&self) -> Vec<Vec<Endpoint>> {
        let ends = self.endpoints();
        let n = self.crossings.len();
        let mut seen = vec![[false; 4]; n];
        let mut faces = Vec::new();
        for c in 0..n {
            for s in 0..4 {
                if seen[c][s] {
                    continue;
                }
                let mut face = Vec::new();
                let mut cur = Endpoint { crossing: c, slot: s };
                while !seen[cur.crossing][cur.slot] {
                    seen[cur.crossing][cur.slot] = true;
                    face.push(cur);
                    let arc = self.crossings[cur.crossing].arcs[cur.slot];
                    let occ = &ends[&arc];
                    let other = if occ[0] == cur { occ[1] } else { occ[0] };
                    cur = Endpoint { crossing: other.crossing, slot: (other.slot + 1) % 4 };
                }
                faces.push(face);
            }
        }
        faces
    }

    /// Connected pieces of the projection graph, as sorted crossing ids.
    /// Free loops are not included.
    pub fn pieces(&self) -> Vec<Vec<CrossingId>> {
        let n = self.crossings.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for occ in self.endpoints().values() {
            if let [p, q] = occ.as_slice() {
                let (a, b) = (find(&mut parent, p.crossing), find(&mut parent, q.crossing));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<CrossingId>> = BTreeMap::new();
        for c in 0..n {
            let r = find(&mut parent, c);
            groups.entry(r).or_default().push(c);
        }
        groups.into_values().collect()
    }

    /// Number of visibly separate pieces, counting each free loop.
    pub fn split_piece_count(&self) -> usize {
        self.pieces().len() + self.free_loops
    }

    /// Components indexed by smallest arc label, each listed in traversal
    /// order from that label; free loops come last.
    pub fn components(&self) -> Vec<Component> {
        let heads = self.heads();
        let mut seen: BTreeSet<Arc> = BTreeSet::new();
        let mut out = Vec::new();
        for start in self.arcs() {
            if seen.contains(&start) {
                continue;
            }
            let mut arcs = Vec::new();
            let mut cur = start;
            while seen.insert(cur) {
                arcs.push(cur);
                let h = heads[&cur];
                let c = &self.crossings[h.crossing];
                cur = c.arcs[c.through(h.slot)];
            }
            out.push(Component { arcs });
        }
        out.extend((0..self.free_loops).map(|_| Component { arcs: Vec::new() }));
        out
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    /// Map from arc label to component index.
    pub fn component_of_arcs(&self) -> HashMap<Arc, usize> {
        let mut map = HashMap::new();
        for (i, comp) in self.components().iter().enumerate() {
            for &a in &comp.arcs {
                map.insert(a, i);
            }
        }
        map
    }

    /// `(under component, over component)` for every crossing.
    pub fn crossing_components(&self) -> Vec<(usize, usize)> {
        let of = self.component_of_arcs();
        self.crossings.iter().map(|c| (of[&c.under_in()], of[&c.over_in()])).collect()
    }

    pub fn is_self_crossing(&self, id: CrossingId) -> Result<bool, DiagramError> {
        let c = self.crossing(id)?;
        let of = self.component_of_arcs();
        Ok(of[&c.under_in()] == of[&c.over_in()])
    }

    pub fn crossing_sign(&self, id: CrossingId) -> Result<Sign, DiagramError> {
        Ok(self.crossing(id)?.sign)
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign.as_i64()).sum()
    }

    pub fn crossing_change(&self, id: CrossingId) -> Result<Diagram, DiagramError> {
        let c = *self.crossing(id)?;
        let mut crossings = self.crossings.clone();
        crossings[id] = c.changed();
        Ok(Self::from_parts(crossings, self.free_loops))
    }

    pub fn mirror(&self) -> Diagram {
        Self::from_parts(self.crossings.iter().map(Crossing::changed).collect(), self.free_loops)
    }

    /// Removes crossing `id` and joins pairs of arc ends. Each pair is
    /// `(kept, absorbed)`: the absorbed label is renamed to the kept one; a
    /// pair whose labels already coincide closes into a free loop.
    fn remove_joining(&self, ids: &[CrossingId], joins: &[(Arc, Arc)]) -> Diagram {
        let mut crossings: Vec<Crossing> = self
            .crossings
            .iter()
            .enumerate()
            .filter(|(i, _)| !ids.contains(i))
            .map(|(_, c)| *c)
            .collect();
        let mut free_loops = self.free_loops;
        let mut subst: HashMap<Arc, Arc> = HashMap::new();
        let resolve = |subst: &HashMap<Arc, Arc>, mut a: Arc| {
            while let Some(&b) = subst.get(&a) {
                a = b;
            }
            a
        };
        for &(keep, absorb) in joins {
            let (k, a) = (resolve(&subst, keep), resolve(&subst, absorb));
            if k == a {
                free_loops += 1;
            } else {
                subst.insert(a, k);
            }
        }
        for c in &mut crossings {
            *c = c.relabeled(|a| resolve(&subst, a));
        }
        Self::from_parts(crossings, free_loops)
    }

    /// Oriented smoothing at `id`: each incoming strand is joined to the
    /// outgoing strand on its own side.
    pub fn smooth(&self, id: CrossingId) -> Result<Diagram, DiagramError> {
        let c = *self.crossing(id)?;
        Ok(self.remove_joining(&[id], &[(c.under_in(), c.over_out()), (c.over_in(), c.under_out())]))
    }

    /// Side-by-side union; arcs of `other` are shifted past this diagram's
    /// largest label.
    pub fn disjoint_union(&self, other: &Diagram) -> Diagram {
        let offset = self.max_arc().unwrap_or(0);
        let mut crossings = self.crossings.clone();
        crossings.extend(other.crossings.iter().map(|c| c.relabeled(|a| a + offset)));
        Self::from_parts(crossings, self.free_loops + other.free_loops)
    }

    /// Relabels arcs `1, 2, ...` consecutively along each component in
    /// component order, starting at each component's smallest label.
    pub fn relabel_canonical(&self) -> Diagram {
        let mut map: HashMap<Arc, Arc> = HashMap::new();
        let mut next = 1;
        for comp in self.components() {
            for a in comp.arcs {
                map.insert(a, next);
                next += 1;
            }
        }
        Self::from_parts(self.crossings.iter().map(|c| c.relabeled(|a| map[&a])).collect(), self.free_loops)
    }

    /// Relabels with an arbitrary injective map on arc labels.
    pub fn relabel(&self, f: impl Fn(Arc) -> Arc) -> Diagram {
        Self::from_parts(self.crossings.iter().map(|c| c.relabeled(&f)).collect(), self.free_loops)
    }

    /// Canonical relabeling with crossings sorted; equal for diagrams that
    /// differ only by arc names along the same traversal or crossing order.
    pub fn canonical_form(&self) -> Diagram {
        let mut d = self.relabel_canonical();
        d.crossings.sort_by_key(|c| {
            let min = *c.arcs.iter().min().unwrap();
            (min, c.arcs, c.sign)
        });
        d
    }

    /// Deletes component `index`. Crossings with other components are
    /// removed and the other strand is joined straight through.
    pub fn delete_component(&self, index: usize) -> Diagram {
        let comps = self.components();
        let comp = &comps[index];
        if comp.is_free_loop() {
            return Self::from_parts(self.crossings.clone(), self.free_loops - 1);
        }
        let mine: BTreeSet<Arc> = comp.arcs.iter().copied().collect();
        let mut ids = Vec::new();
        let mut joins = Vec::new();
        for (i, c) in self.crossings.iter().enumerate() {
            let under_mine = mine.contains(&c.under_in());
            let over_mine = mine.contains(&c.over_in());
            if under_mine || over_mine {
                ids.push(i);
            }
            if under_mine && !over_mine {
                joins.push((c.over_in(), c.over_out()));
            } else if over_mine && !under_mine {
                joins.push((c.under_in(), c.under_out()));
            }
        }
        self.remove_joining(&ids, &joins)
    }

    /// Adds `n` crossingless unknotted components.
    pub fn with_free_loops(&self, n: usize) -> Diagram {
        Self::from_parts(self.crossings.clone(), self.free_loops + n)
    }

    /// One Reidemeister I reduction, if a monogon face exists.
    fn reduce_r1(&self) -> Option<Diagram> {
        let face = self.faces().into_iter().find(|f| f.len() == 1)?;
        let id = face[0].crossing;
        let c = &self.crossings[id];
        let loop_arc = c.arcs[face[0].slot];
        let rest: Vec<usize> = (0..4).filter(|&s| c.arcs[s] != loop_arc).collect();
        let (inc, out) = if c.is_incoming(rest[0]) { (rest[0], rest[1]) } else { (rest[1], rest[0]) };
        Some(self.remove_joining(&[id], &[(c.arcs[inc], c.arcs[out])]))
    }

    /// One Reidemeister II reduction, if a bigon face bounded by one strand
    /// passing over twice and one passing under twice exists.
    fn reduce_r2(&self) -> Option<Diagram> {
        let ends = self.endpoints();
        let other_end = |e: Endpoint| {
            let occ = &ends[&self.crossings[e.crossing].arcs[e.slot]];
            if occ[0] == e { occ[1] } else { occ[0] }
        };
        for face in self.faces() {
            let [d1, d2] = face.as_slice() else { continue };
            if d1.crossing == d2.crossing {
                continue;
            }
            // d1 runs c1 -> c2 arriving at e1; d2 runs c2 -> c1 arriving at e2
            let e1 = other_end(*d1);
            let e2 = other_end(*d2);
            let over1 = Crossing::is_over_slot(d1.slot);
            if Crossing::is_over_slot(e1.slot) != over1
                || Crossing::is_over_slot(d2.slot) == over1
                || Crossing::is_over_slot(e2.slot) == over1
            {
                continue;
            }
            let (c1, c2) = (d1.crossing, d2.crossing);
            let x1 = &self.crossings[c1];
            let x2 = &self.crossings[c2];
            let p = x1.arcs[(d1.slot + 2) % 4];
            let q = x2.arcs[(e1.slot + 2) % 4];
            let u = x1.arcs[(e2.slot + 2) % 4];
            let v = x2.arcs[(d2.slot + 2) % 4];
            return Some(self.remove_joining(&[c1, c2], &[(p, q), (u, v)]));
        }
        None
    }

    /// Greedy Reidemeister I/II reduction until neither applies.
    pub fn simplify(&self) -> Diagram {
        let mut d = self.clone();
        loop {
            if let Some(next) = d.reduce_r1() {
                d = next;
            } else if let Some(next) = d.reduce_r2() {
                d = next;
            } else {
                return d;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> Diagram {
        Diagram::from_pd(&[[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]], 0).unwrap()
    }

    fn hopf_pos() -> Diagram {
        Diagram::from_pd(&[[1, 3, 2, 4], [3, 1, 4, 2]], 0).unwrap()
    }

    #[test]
    fn trefoil_structure() {
        let d = trefoil();
        assert!(d.validate().is_valid());
        assert_eq!(d.component_count(), 1);
        for id in 0..3 {
            assert_eq!(d.crossing_sign(id).unwrap(), Sign::Positive);
        }
        assert_eq!(d.faces().len(), 5);
    }

    #[test]
    fn knot_atlas_trefoil_is_left_handed() {
        let d = Diagram::from_pd(&[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]], 0).unwrap();
        assert_eq!(d.writhe(), -3);
        assert_eq!(d.mirror().writhe(), 3);
    }

    #[test]
    fn validation_reports() {
        let err = Diagram::from_pd(&[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 7]], 0).unwrap_err();
        let DiagramError::Invalid(report) = err else { panic!() };
        assert!(report.violations.contains(&Violation::UnpairedArc { arc: 3, occurrences: 1 }));
        assert!(report.violations.contains(&Violation::UnpairedArc { arc: 7, occurrences: 1 }));

        let err = Diagram::from_pd(&[[3, 1, 4, 2], [4, 2, 3, 1]], 0).unwrap_err();
        assert_eq!(
            err,
            DiagramError::Invalid(ValidationReport {
                violations: vec![Violation::NonPlanar { crossings: 2, faces: 2 }]
            })
        );

        let two_loops = Diagram::unlink(2);
        assert!(two_loops.validate().is_valid());
        assert_eq!(two_loops.component_count(), 2);
        assert_eq!(two_loops.crossing_count(), 0);
    }

    #[test]
    fn orientation_conflict_is_reported() {
        // both ends of arc 1 are under-strand entries
        let bad = Diagram { crossings: vec![Crossing::new([1, 2, 3, 4], Sign::Positive), Crossing::new([1, 3, 2, 4], Sign::Positive)], free_loops: 0 };
        let report = bad.validate();
        assert!(report.violations.contains(&Violation::InconsistentOrientation { arc: 1 }));
    }

    #[test]
    fn component_indexing() {
        let h = hopf_pos();
        let comps = h.components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].arcs, vec![1, 2]);
        assert_eq!(comps[1].arcs, vec![3, 4]);
        let mixed = h.with_free_loops(1);
        assert!(mixed.components()[2].is_free_loop());
    }

    #[test]
    fn signs_and_mirror() {
        let h = hopf_pos();
        assert_eq!(h.crossing_sign(0).unwrap(), Sign::Positive);
        assert_eq!(h.crossing_sign(1).unwrap(), Sign::Positive);
        let m = h.mirror();
        assert!(m.crossings().iter().all(|c| c.sign() == Sign::Negative));
        assert_eq!(h.crossing_sign(2), Err(DiagramError::UnknownCrossing { id: 2, count: 2 }));
    }

    #[test]
    fn crossing_change_is_an_involution() {
        let t = trefoil();
        for id in 0..3 {
            let once = t.crossing_change(id).unwrap();
            assert_ne!(once, t);
            assert_eq!(once.arcs(), t.arcs());
            assert_eq!(once.components(), t.components());
            assert_eq!(once.crossing_change(id).unwrap(), t);
        }
        let h = hopf_pos().crossing_change(0).unwrap();
        assert_eq!(h.writhe(), 0);
        assert!(t.crossing_change(3).is_err());
    }

    #[test]
    fn smoothing() {
        let t = trefoil();
        for id in 0..3 {
            let s = t.smooth(id).unwrap();
            assert!(s.validate().is_valid());
            assert_eq!(s.component_count(), 2);
            assert_eq!(s.crossing_count(), 2);
            assert_eq!(s.writhe(), 2);
        }
        let h = hopf_pos();
        let s = h.smooth(0).unwrap();
        assert_eq!(s.component_count(), 1);
        assert_eq!(s.simplify(), Diagram::unlink(1));
        // smoothing a kink leaves two loops
        let kink = Diagram::from_pd(&[[1, 1, 2, 2]], 0).unwrap();
        assert_eq!(kink.smooth(0).unwrap(), Diagram::unlink(2));
    }

    #[test]
    fn reidemeister_reductions() {
        let kink = Diagram::from_pd(&[[1, 1, 2, 2]], 0).unwrap();
        assert_eq!(kink.simplify(), Diagram::unlink(1));
        let poke = Diagram::from_pd(&[[3, 1, 4, 2], [4, 1, 3, 2]], 0).unwrap();
        assert_eq!(poke.component_count(), 2);
        assert_eq!(poke.simplify(), Diagram::unlink(2));
        assert_eq!(trefoil().simplify(), trefoil());
        assert_eq!(hopf_pos().simplify(), hopf_pos());
        // figure-eight of two kinks collapses to one loop
        let double = Diagram::from_pd(&[[1, 2, 2, 1]], 0).unwrap();
        assert_eq!(double.simplify(), Diagram::unlink(1));
    }

    #[test]
    fn disjoint_union_relabels() {
        let t = trefoil();
        let u = t.disjoint_union(&hopf_pos());
        assert_eq!(u.component_count(), 3);
        assert_eq!(u.crossing_count(), 5);
        assert_eq!(u.pieces().len(), 2);
        assert_eq!(t.disjoint_union(&Diagram::empty()), t);
        assert_eq!(Diagram::unlink(1).disjoint_union(&Diagram::unlink(1)), Diagram::unlink(2));
    }

    #[test]
    fn delete_component() {
        let h = hopf_pos();
        assert_eq!(h.delete_component(1), Diagram::unlink(1));
        assert_eq!(Diagram::unlink(2).delete_component(0), Diagram::unlink(1));
    }

    #[test]
    fn canonical_form_ignores_labels() {
        let t = trefoil();
        let shifted = t.relabel(|a| a * 10 + 3);
        assert_eq!(shifted.canonical_form(), t.canonical_form());
    }
}
