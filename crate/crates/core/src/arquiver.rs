//! Dynkin quivers, their AR quivers `Gamma_Q`, the convex partial order of a
//! commutation class, and the reduced words read off a quiver.
//!
//! Positions are stored doubled so half-integer coordinates stay exact. An
//! arrow `(u, v)` always points from a root to one that precedes it: every
//! reading lists `v` before `u`.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::rootset::RootSet;
use crate::rootsys::{RootId, RootSystem};
use crate::words::{self, CommutationClass, Heap, WordError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("edge {0}-{1} is not an edge of the diagram")]
    NotAnEdge(usize, usize),
    #[error("edge {0}-{1} is oriented more than once")]
    DuplicateEdge(usize, usize),
    #[error("{0} diagram edges are not oriented")]
    MissingEdges(usize),
    #[error("quiver has a directed cycle")]
    Cyclic,
    #[error("root {0} was never placed while building the AR quiver")]
    Unplaced(usize),
    #[error("two roots share the coordinate ({0}, {1})")]
    Collision(usize, i64),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// An orientation of the Dynkin diagram with its height function.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DynkinQuiver {
    /// Oriented edges `(tail, head)`, sorted.
    arrows: Vec<(usize, usize)>,
    /// `xi(i)` at index `i - 1`, normalized so that `xi(1) = 0`.
    height: Vec<i64>,
}

impl DynkinQuiver {
    pub fn new(rs: &RootSystem, arrows: &[(usize, usize)]) -> Result<Self, QuiverError> {
        let d = rs.datum();
        let mut seen = BTreeSet::new();
        for &(a, b) in arrows {
            if a == 0 || b == 0 || a > rs.rank() || b > rs.rank() || !d.adjacent(a, b) {
                return Err(QuiverError::NotAnEdge(a, b));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(QuiverError::DuplicateEdge(a, b));
            }
        }
        let missing = d.edges().len() - seen.len();
        if missing > 0 {
            return Err(QuiverError::MissingEdges(missing));
        }
        let mut sorted = arrows.to_vec();
        sorted.sort();

        let n = rs.rank();
        let mut height: Vec<Option<i64>> = vec![None; n];
        height[0] = Some(0);
        let mut queue = VecDeque::from([1usize]);
        while let Some(i) = queue.pop_front() {
            let hi = height[i - 1].unwrap();
            for &(a, b) in &sorted {
                let (j, hj) = if a == i {
                    (b, hi + 1)
                } else if b == i {
                    (a, hi - 1)
                } else {
                    continue;
                };
                if height[j - 1].is_none() {
                    height[j - 1] = Some(hj);
                    queue.push_back(j);
                }
            }
        }
        Ok(DynkinQuiver {
            arrows: sorted,
            height: height.into_iter().map(|h| h.unwrap()).collect(),
        })
    }

    /// Every orientation of the diagram, in a fixed order.
    pub fn all(rs: &RootSystem) -> Vec<DynkinQuiver> {
        let edges = rs.datum().edges();
        (0..1u64 << edges.len())
            .map(|mask| {
                let arrows: Vec<_> = edges
                    .iter()
                    .enumerate()
                    .map(|(k, &(a, b))| if mask >> k & 1 == 1 { (b, a) } else { (a, b) })
                    .collect();
                DynkinQuiver::new(rs, &arrows).expect("orientation of the diagram")
            })
            .collect()
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn rank(&self) -> usize {
        self.height.len()
    }

    /// `xi(i)`.
    pub fn height(&self, i: usize) -> i64 {
        self.height[i - 1]
    }

    /// Vertices with only entering arrows.
    pub fn is_sink(&self, i: usize) -> bool {
        self.arrows.iter().all(|&(a, _)| a != i)
    }

    pub fn is_source(&self, i: usize) -> bool {
        self.arrows.iter().all(|&(_, b)| b != i)
    }

    /// `s_i Q`: reverse the arrows at `i`.
    pub fn reflect(&self, i: usize) -> DynkinQuiver {
        let mut arrows: Vec<_> = self
            .arrows
            .iter()
            .map(|&(a, b)| if a == i || b == i { (b, a) } else { (a, b) })
            .collect();
        arrows.sort();
        let mut height = self.height.clone();
        if self.is_sink(i) {
            height[i - 1] -= 2;
        } else if self.is_source(i) {
            height[i - 1] += 2;
        }
        let shift = height[0];
        DynkinQuiver {
            arrows,
            height: height.into_iter().map(|h| h - shift).collect(),
        }
    }

    /// Does every letter of the word hit a sink of the successively reflected quiver?
    pub fn is_adapted(&self, letters: &[usize]) -> bool {
        let mut q = self.clone();
        for &i in letters {
            if i == 0 || i > q.rank() || !q.is_sink(i) {
                return false;
            }
            q = q.reflect(i);
        }
        true
    }

    /// A reduced word of `w_0` adapted to this quiver, read off `Gamma_Q`.
    pub fn adapted_word(&self, rs: &RootSystem) -> Vec<usize> {
        gamma_q(rs, self).expect("Gamma_Q of a Dynkin quiver").reading_word()
    }

    /// The class `[Q]`.
    pub fn class(&self, rs: &RootSystem) -> CommutationClass {
        CommutationClass::of_longest(rs, &self.adapted_word(rs)).expect("adapted words are reduced")
    }
}

/// The Coxeter element adapted to `Q`: peel off sinks, smallest first.
pub fn coxeter_element_of(q: &DynkinQuiver) -> Vec<usize> {
    let mut remaining: BTreeSet<usize> = (1..=q.rank()).collect();
    let mut out = Vec::with_capacity(q.rank());
    while !remaining.is_empty() {
        let i = *remaining
            .iter()
            .find(|&&i| q.arrows.iter().all(|&(a, b)| a != i || !remaining.contains(&b)))
            .expect("acyclic");
        remaining.remove(&i);
        out.push(i);
    }
    out
}

/// `Phi(phi_Q) = Phi^+ cap phi_Q Phi^+`, in the order given by the Coxeter word.
pub fn coxeter_roots(rs: &RootSystem, coxeter: &[usize]) -> Vec<RootId> {
    words::root_sequence(rs, coxeter).expect("Coxeter words are reduced")
}

/// The unique quiver a reduced word of `w_0` is adapted to, if any.
pub fn adapted_quiver_of(rs: &RootSystem, letters: &[usize]) -> Option<DynkinQuiver> {
    // whichever of two adjacent letters comes first was a sink
    let mut arrows = Vec::new();
    for (a, b) in rs.datum().edges() {
        let first = letters.iter().find(|&&x| x == a || x == b)?;
        arrows.push(if *first == a { (b, a) } else { (a, b) });
    }
    let q = DynkinQuiver::new(rs, &arrows).ok()?;
    q.is_adapted(letters).then_some(q)
}

/// A quiver on the positive roots with residues and optional (doubled) positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArQuiver {
    residues: Vec<usize>,
    positions: Option<Vec<i64>>,
    arrows: BTreeSet<(RootId, RootId)>,
}

impl ArQuiver {
    pub fn new(
        residues: Vec<usize>,
        positions: Option<Vec<i64>>,
        arrows: BTreeSet<(RootId, RootId)>,
    ) -> Result<Self, QuiverError> {
        if let Some(p) = &positions {
            let mut seen = BTreeSet::new();
            for (id, (&r, &x)) in residues.iter().zip(p).enumerate() {
                if !seen.insert((r, x)) {
                    let _ = id;
                    return Err(QuiverError::Collision(r, x));
                }
            }
        }
        let q = ArQuiver {
            residues,
            positions,
            arrows,
        };
        q.earlier_sets()?;
        Ok(q)
    }

    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    pub fn residue(&self, id: RootId) -> usize {
        self.residues[id]
    }

    pub fn residues(&self) -> &[usize] {
        &self.residues
    }

    /// Doubled position of a root, when coordinates are attached.
    pub fn position(&self, id: RootId) -> Option<i64> {
        self.positions.as_ref().map(|p| p[id])
    }

    pub fn positions(&self) -> Option<&[i64]> {
        self.positions.as_deref()
    }

    pub fn arrows(&self) -> &BTreeSet<(RootId, RootId)> {
        &self.arrows
    }

    /// Root at a residue and doubled position.
    pub fn root_at(&self, residue: usize, position: i64) -> Option<RootId> {
        let p = self.positions.as_ref()?;
        (0..self.len()).find(|&id| self.residues[id] == residue && p[id] == position)
    }

    /// Roots sorted by `(position, residue)`, or by id without coordinates.
    pub fn sorted_vertices(&self) -> Vec<RootId> {
        let mut v: Vec<RootId> = (0..self.len()).collect();
        if let Some(p) = &self.positions {
            v.sort_by_key(|&id| (p[id], self.residues[id]));
        }
        v
    }

    /// For each root, the set of roots reachable from it along arrows
    /// (the roots that must be read before it).
    pub fn earlier_sets(&self) -> Result<Vec<RootSet>, QuiverError> {
        let n = self.len();
        let mut out_edges = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for &(u, v) in &self.arrows {
            out_edges[u].push(v);
            indeg[v] += 1;
        }
        // Kahn's order from roots nobody points at; fill sets in reverse
        let mut order = Vec::with_capacity(n);
        let mut queue: VecDeque<usize> = (0..n).filter(|&u| indeg[u] == 0).collect();
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &v in &out_edges[u] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    queue.push_back(v);
                }
            }
        }
        if order.len() != n {
            return Err(QuiverError::Cyclic);
        }
        let mut earlier = vec![RootSet::EMPTY; n];
        for &u in order.iter().rev() {
            let mut s = RootSet::EMPTY;
            for &v in &out_edges[u] {
                s.insert(v);
                s |= earlier[v];
            }
            earlier[u] = s;
        }
        Ok(earlier)
    }

    /// A reading: by decreasing position when coordinates exist
    /// (ties by residue), otherwise the smallest available residue first.
    pub fn reading(&self) -> Vec<RootId> {
        let earlier = self.earlier_sets().expect("checked at construction");
        let n = self.len();
        let mut done = RootSet::EMPTY;
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            let avail = (0..n).filter(|&u| !done.contains(u) && earlier[u].is_subset(done));
            let next = match &self.positions {
                Some(p) => avail.min_by_key(|&u| (-p[u], self.residues[u])),
                None => avail.min_by_key(|&u| (self.residues[u], u)),
            }
            .expect("acyclic");
            done.insert(next);
            out.push(next);
        }
        out
    }

    /// Residue word of [`ArQuiver::reading`].
    pub fn reading_word(&self) -> Vec<usize> {
        self.reading().into_iter().map(|u| self.residues[u]).collect()
    }

    /// Every residue word compatible with the arrows, up to `cap` words.
    pub fn read_reduced_words(&self, cap: usize) -> Result<BTreeSet<Vec<usize>>, QuiverError> {
        let earlier = self.earlier_sets()?;
        let mut out = BTreeSet::new();
        let mut word = Vec::with_capacity(self.len());
        self.extend_readings(&earlier, RootSet::EMPTY, &mut word, &mut out, cap)?;
        Ok(out)
    }

    fn extend_readings(
        &self,
        earlier: &[RootSet],
        done: RootSet,
        word: &mut Vec<usize>,
        out: &mut BTreeSet<Vec<usize>>,
        cap: usize,
    ) -> Result<(), QuiverError> {
        if word.len() == self.len() {
            if out.len() >= cap && !out.contains(word) {
                return Err(QuiverError::Word(WordError::CapExceeded { cap }));
            }
            out.insert(word.clone());
            return Ok(());
        }
        for u in 0..self.len() {
            if !done.contains(u) && earlier[u].is_subset(done) {
                let mut next = done;
                next.insert(u);
                word.push(self.residues[u]);
                self.extend_readings(earlier, next, word, out, cap)?;
                word.pop();
            }
        }
        Ok(())
    }

    /// Does reading this quiver produce the given root order?
    pub fn labels_match(&self, rs: &RootSystem) -> bool {
        let order = self.reading();
        let word: Vec<usize> = order.iter().map(|&u| self.residues[u]).collect();
        match words::root_sequence(rs, &word) {
            Ok(seq) => seq == order,
            Err(_) => false,
        }
    }
}

/// The AR quiver `Gamma_Q` with coordinates from the height function.
pub fn gamma_q(rs: &RootSystem, q: &DynkinQuiver) -> Result<ArQuiver, QuiverError> {
    let coxeter = coxeter_element_of(q);
    let n = rs.num_positive();
    let mut residue = vec![0usize; n];
    let mut position: Vec<Option<i64>> = vec![None; n];
    for (k, id) in coxeter_roots(rs, &coxeter).into_iter().enumerate() {
        let i = coxeter[k];
        let (mut cur, mut p) = (id, q.height(i));
        loop {
            residue[cur] = i;
            position[cur] = Some(2 * p);
            // phi_Q = s_{i_1} ... s_{i_n}: apply the last letter first
            let mut v = rs.root(cur).0.clone();
            for &j in coxeter.iter().rev() {
                v = rs.reflect_vec(j, &v);
            }
            match rs.root_id(&v) {
                Some(next) => {
                    cur = next;
                    p -= 2;
                }
                None => break,
            }
        }
    }
    let positions: Vec<i64> = position
        .iter()
        .enumerate()
        .map(|(id, p)| p.ok_or(QuiverError::Unplaced(id)))
        .collect::<Result<_, _>>()?;
    let d = rs.datum();
    let mut arrows = BTreeSet::new();
    for u in 0..n {
        for v in 0..n {
            if d.adjacent(residue[u], residue[v]) && positions[v] - positions[u] == 2 {
                arrows.insert((u, v));
            }
        }
    }
    ArQuiver::new(residue, Some(positions), arrows)
}

/// The convex partial order of a class: `a` precedes `b` iff it does so in
/// every member word.
#[derive(Debug, Clone)]
pub struct ConvexOrder {
    sequence: Vec<RootId>,
    letters: Vec<usize>,
    position: Vec<usize>,
    below: Vec<RootSet>,
    above: Vec<RootSet>,
}

impl ConvexOrder {
    pub fn new(rs: &RootSystem, class: &CommutationClass) -> Self {
        let letters = class.canonical().to_vec();
        let sequence = words::root_sequence(rs, &letters).expect("class words are reduced");
        let heap = Heap::new(rs, &letters);
        let n = rs.num_positive();
        let mut position = vec![usize::MAX; n];
        for (k, &r) in sequence.iter().enumerate() {
            position[r] = k;
        }
        let mut below = vec![RootSet::EMPTY; n];
        let mut above = vec![RootSet::EMPTY; n];
        for (l, &b) in sequence.iter().enumerate() {
            let mask = heap.below_mask(l);
            for k in 0..l {
                if mask >> k & 1 == 1 {
                    let a = sequence[k];
                    below[b].insert(a);
                    above[a].insert(b);
                }
            }
        }
        ConvexOrder {
            sequence,
            letters,
            position,
            below,
            above,
        }
    }

    /// Root sequence of the canonical word.
    pub fn sequence(&self) -> &[RootId] {
        &self.sequence
    }

    /// Residue of a root: the letter at its position (the same in every member).
    pub fn residue(&self, id: RootId) -> usize {
        self.letters[self.position[id]]
    }

    /// Index of a root in the canonical word.
    pub fn position(&self, id: RootId) -> usize {
        self.position[id]
    }

    /// `a < b` strictly.
    pub fn precedes(&self, a: RootId, b: RootId) -> bool {
        self.below[b].contains(a)
    }

    pub fn comparable(&self, a: RootId, b: RootId) -> bool {
        self.precedes(a, b) || self.precedes(b, a)
    }

    pub fn below(&self, b: RootId) -> RootSet {
        self.below[b]
    }

    pub fn above(&self, a: RootId) -> RootSet {
        self.above[a]
    }

    /// Roots strictly between `a` and `b` (empty unless `a < b`).
    pub fn open_interval(&self, a: RootId, b: RootId) -> RootSet {
        self.above[a] & self.below[b]
    }

    /// Cover relations `(b, a)` with `a < b` and nothing in between.
    pub fn covers(&self) -> BTreeSet<(RootId, RootId)> {
        let mut out = BTreeSet::new();
        for b in 0..self.sequence.len() {
            for a in self.below[b].iter() {
                if self.open_interval(a, b).is_empty() {
                    out.insert((b, a));
                }
            }
        }
        out
    }

    /// Minimal elements of a subset.
    pub fn minimal_in(&self, set: RootSet) -> RootSet {
        set.iter().filter(|&x| (self.below[x] & set).is_empty()).collect()
    }

    /// Maximal elements of a subset.
    pub fn maximal_in(&self, set: RootSet) -> RootSet {
        set.iter().filter(|&x| (self.above[x] & set).is_empty()).collect()
    }
}

pub fn convex_order(rs: &RootSystem, class: &CommutationClass) -> ConvexOrder {
    ConvexOrder::new(rs, class)
}

/// The cover-relation digraph of the convex order, with residues.
pub fn hasse_quiver(rs: &RootSystem, class: &CommutationClass) -> ArQuiver {
    let order = ConvexOrder::new(rs, class);
    let residues = (0..rs.num_positive()).map(|r| order.residue(r)).collect();
    ArQuiver::new(residues, None, order.covers()).expect("cover relations of a partial order are acyclic")
}
