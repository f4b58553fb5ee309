//! Twisted adapted classes of `A_{2n-1}`, `D_{n+1}` and `E_6`, their quivers
//! `Upsilon` with coordinates, and the folded quivers over `B_n`, `C_n`, `F_4`.
//!
//! Folded positions are integers in units where the short simple roots of
//! the folded type sit one step apart: for `A_{2n-1}` that is the doubled
//! half-integer position, for `D_{n+1}` and `E_6` the position itself.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::arquiver::{gamma_q, ArQuiver, ConvexOrder, DynkinQuiver};
use crate::rootsys::{DiagramAutomorphism, DynkinType, FoldedType, RootId, RootSystem};
use crate::words::{self, CommutationClass};
use crate::{Error, Result};

const E6_UNFOLDED: &str = include_str!("../fixtures/e6_unfolded.txt");
const E6_FOLDED: &str = include_str!("../fixtures/e6_folded.txt");
const E6_FOLDED_R1: &str = include_str!("../fixtures/e6_folded_r1.txt");

/// Which end of the `{n-1, n}` letters receives the extra `s_n` in the
/// `A_{2n-2} -> A_{2n-1}` construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TwistSide {
    /// `>`: `s_n s_{i^+}` at the first such letter.
    First,
    /// `<`: `s_{i^+} s_n` at the last such letter.
    Last,
}

/// How a twisted adapted class was produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recipe {
    FromA { quiver: DynkinQuiver, side: TwistSide },
    /// `choice` is the residue given to the right-most vertex of the last row.
    FromD { quiver: DynkinQuiver, choice: usize },
    /// Right reflections applied to the printed `E_6` class, in order.
    E6 { reflections: Vec<usize> },
}

/// A quiver with folded coordinates `(i-bar, p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldedQuiver {
    residues: Vec<usize>,
    positions: Vec<i64>,
    arrows: BTreeSet<(RootId, RootId)>,
    class: CommutationClass,
}

impl FoldedQuiver {
    pub fn new(
        rs: &RootSystem,
        residues: Vec<usize>,
        positions: Vec<i64>,
        arrows: BTreeSet<(RootId, RootId)>,
    ) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (&r, &p) in residues.iter().zip(&positions) {
            if !seen.insert((r, p)) {
                return Err(Error::Invalid(format!("folded coordinate ({r}, {p}) is used twice")));
            }
        }
        let labels = reading_by_position(&positions, &arrows)?;
        let word = word_from_labels(rs, &labels)?;
        let class = CommutationClass::of_longest(rs, &word)?;
        Ok(FoldedQuiver {
            residues,
            positions,
            arrows,
            class,
        })
    }

    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    /// `(i-bar, p)` of a root.
    pub fn coordinate(&self, id: RootId) -> (usize, i64) {
        (self.residues[id], self.positions[id])
    }

    pub fn residue(&self, id: RootId) -> usize {
        self.residues[id]
    }

    pub fn position(&self, id: RootId) -> i64 {
        self.positions[id]
    }

    pub fn arrows(&self) -> &BTreeSet<(RootId, RootId)> {
        &self.arrows
    }

    /// The class read off this quiver.
    pub fn class(&self) -> &CommutationClass {
        &self.class
    }

    pub fn root_at(&self, residue: usize, position: i64) -> Option<RootId> {
        (0..self.len()).find(|&id| self.residues[id] == residue && self.positions[id] == position)
    }

    /// Roots sorted by `(position, residue)`.
    pub fn sorted_vertices(&self) -> Vec<RootId> {
        let mut v: Vec<RootId> = (0..self.len()).collect();
        v.sort_by_key(|&id| (self.positions[id], self.residues[id]));
        v
    }

    /// Same quiver with every position moved by `delta`.
    pub fn shifted(&self, delta: i64) -> FoldedQuiver {
        FoldedQuiver {
            positions: self.positions.iter().map(|p| p + delta).collect(),
            ..self.clone()
        }
    }

    /// Positions moved so the smallest one is `min`.
    pub fn normalized(&self, min: i64) -> FoldedQuiver {
        let cur = self.positions.iter().copied().min().unwrap_or(0);
        self.shifted(min - cur)
    }

    /// Does the label of `alpha_i` have no outgoing arrow (nothing is read before it)?
    pub fn is_sink(&self, rs: &RootSystem, i: usize) -> bool {
        let a = rs.simple_root(i);
        self.arrows.iter().all(|&(u, _)| u != a)
    }

    /// Arrows predicted by the folded rule: `(i,p) -> (j, p + min(d_i, d_j))`
    /// for adjacent folded residues.
    pub fn rule_arrows(&self, aut: &DiagramAutomorphism) -> BTreeSet<(RootId, RootId)> {
        let mut out = BTreeSet::new();
        for u in 0..self.len() {
            for v in 0..self.len() {
                let (i, j) = (self.residues[u], self.residues[v]);
                if aut.folded_adjacent(i, j)
                    && self.positions[v] - self.positions[u] == aut.symmetrizer(i).min(aut.symmetrizer(j))
                {
                    out.insert((u, v));
                }
            }
        }
        out
    }
}

/// Roots in an order compatible with the arrows: decreasing position,
/// ties broken by root index.
fn reading_by_position(positions: &[i64], arrows: &BTreeSet<(RootId, RootId)>) -> Result<Vec<RootId>> {
    for &(u, v) in arrows {
        if positions[v] <= positions[u] {
            return Err(Error::Invalid(format!(
                "arrow {u} -> {v} does not increase the position"
            )));
        }
    }
    let mut order: Vec<RootId> = (0..positions.len()).collect();
    order.sort_by_key(|&id| (std::cmp::Reverse(positions[id]), id));
    Ok(order)
}

/// The word whose root sequence is `labels`: each `i_k` is the simple root
/// `s_{i_{k-1}} ... s_{i_1}(beta_k)`.
pub fn word_from_labels(rs: &RootSystem, labels: &[RootId]) -> Result<Vec<usize>> {
    let mut word = Vec::with_capacity(labels.len());
    for (k, &beta) in labels.iter().enumerate() {
        let mut v = rs.root(beta).0.clone();
        for &j in &word {
            v = rs.reflect_vec(j, &v);
        }
        let i = rs
            .root_id(&v)
            .and_then(|id| rs.simple_index(id))
            .ok_or_else(|| Error::Invalid(format!("label {} at step {} is not reachable", rs.root(beta), k + 1)))?;
        word.push(i);
    }
    Ok(word)
}

/// Attach root labels to a coordinate quiver by reading it in decreasing
/// position. `vertices` are `(residue, doubled position)`; arrows index into it.
pub fn label_coordinates(
    rs: &RootSystem,
    vertices: &[(usize, i64)],
    arrows: &BTreeSet<(usize, usize)>,
) -> Result<ArQuiver> {
    if vertices.len() != rs.num_positive() {
        return Err(Error::Invalid(format!(
            "{} vertices for {} positive roots",
            vertices.len(),
            rs.num_positive()
        )));
    }
    let positions: Vec<i64> = vertices.iter().map(|v| v.1).collect();
    let mut order: Vec<usize> = (0..vertices.len()).collect();
    order.sort_by_key(|&k| (std::cmp::Reverse(vertices[k].1), vertices[k].0));
    reading_by_position(&positions, arrows)?;
    let word: Vec<usize> = order.iter().map(|&k| vertices[k].0).collect();
    let seq = words::check_longest(rs, &word)?;
    let mut root_of = vec![0; vertices.len()];
    for (slot, &k) in order.iter().enumerate() {
        root_of[k] = seq[slot];
    }
    let n = rs.num_positive();
    let mut residues = vec![0; n];
    let mut pos = vec![0; n];
    for (k, &(r, p)) in vertices.iter().enumerate() {
        residues[root_of[k]] = r;
        pos[root_of[k]] = p;
    }
    let arrows = arrows.iter().map(|&(u, v)| (root_of[u], root_of[v])).collect();
    Ok(ArQuiver::new(residues, Some(pos), arrows)?)
}

/// The `A_{2n-1}` word obtained from a word of `A_{2n-2}` (`n >= 2`).
pub fn twist_word_from_a(source_rank: usize, word: &[usize], side: TwistSide) -> Vec<usize> {
    let n = source_rank / 2 + 1;
    let special = |i: usize| i == n - 1 || i == n;
    let plus = |i: usize| if i > n - 1 { i + 1 } else { i };
    let marks: Vec<usize> = (0..word.len()).filter(|&k| special(word[k])).collect();
    let mut out = Vec::with_capacity(word.len() + 2 * n - 1);
    for (k, &i) in word.iter().enumerate() {
        match side {
            TwistSide::First if Some(&k) == marks.first() => out.extend([n, plus(i)]),
            TwistSide::Last if Some(&k) == marks.last() => out.extend([plus(i), n]),
            _ => out.push(plus(i)),
        }
        if special(i) {
            let next = marks.iter().find(|&&l| l > k).map(|&l| word[l]);
            if next.is_some_and(|j| j != i) {
                out.push(n);
            }
        }
    }
    out
}

/// A twisted adapted class with its quiver and folded quiver.
#[derive(Debug, Clone)]
pub struct TwistedClass {
    pub recipe: Recipe,
    pub class: CommutationClass,
    pub quiver: ArQuiver,
    pub folded: FoldedQuiver,
}

fn fold_quiver(
    rs: &RootSystem,
    aut: &DiagramAutomorphism,
    quiver: &ArQuiver,
    positions_are_doubled_units: bool,
) -> Result<FoldedQuiver> {
    let pos = quiver.positions().ok_or_else(|| Error::Invalid("quiver has no coordinates".into()))?;
    let residues = (0..rs.num_positive()).map(|id| aut.orbit(quiver.residue(id))).collect();
    let positions = pos
        .iter()
        .map(|&p| if positions_are_doubled_units { p } else { p / 2 })
        .collect();
    FoldedQuiver::new(rs, residues, positions, quiver.arrows().clone())
}

/// Fold the quiver of a twisted adapted class of `A_{2n-1}` or `D_{n+1}`.
pub fn fold(rs: &RootSystem, quiver: &ArQuiver) -> Result<FoldedQuiver> {
    let aut = DiagramAutomorphism::standard(rs)?;
    match aut.target() {
        FoldedType::B => fold_quiver(rs, &aut, quiver, true),
        FoldedType::C | FoldedType::F4 => fold_quiver(rs, &aut, quiver, false),
        FoldedType::G2 => Err(Error::Invalid("triality folding is not supported".into())),
    }
}

/// `[Q^>]` or `[Q^<]` of `A_{2n-1}` from a quiver `Q` of `A_{2n-2}`.
pub fn twist_from_a(small: &RootSystem, big: &RootSystem, q: &DynkinQuiver, side: TwistSide) -> Result<TwistedClass> {
    if small.kind() != DynkinType::A || big.kind() != DynkinType::A || big.rank() != small.rank() + 1 || !small.rank().is_multiple_of(2) {
        return Err(Error::Invalid(format!("expected A_(2n-2) and A_(2n-1), got {} and {}", small.name(), big.name())));
    }
    let n = small.rank() / 2 + 1;
    let g = gamma_q(small, q)?;
    let mut vertices: Vec<(usize, i64)> = Vec::new();
    for id in 0..small.num_positive() {
        let i = g.residue(id);
        let p = g.position(id).unwrap();
        vertices.push((if i > n - 1 { i + 1 } else { i }, p));
        if i == n - 1 || i == n {
            let star = match side {
                TwistSide::First => p + 1,
                TwistSide::Last => p - 1,
            };
            vertices.push((n, star));
        }
    }
    let d = big.datum();
    let mut arrows = BTreeSet::new();
    for (u, &(i, p)) in vertices.iter().enumerate() {
        for (v, &(j, r)) in vertices.iter().enumerate() {
            let gap = if i == n || j == n { 1 } else { 2 };
            if d.adjacent(i, j) && r - p == gap {
                arrows.insert((u, v));
            }
        }
    }
    let quiver = label_coordinates(big, &vertices, &arrows)?;
    let folded = fold(big, &quiver)?;
    Ok(TwistedClass {
        recipe: Recipe::FromA { quiver: q.clone(), side },
        class: folded.class().clone(),
        quiver,
        folded,
    })
}

/// `[Q^{<-n}]` or `[Q^{<-n+1}]` of `D_{n+1}` from a quiver `Q` of `A_n`.
pub fn twist_from_d(small: &RootSystem, big: &RootSystem, q: &DynkinQuiver, choice: usize) -> Result<TwistedClass> {
    let n = small.rank();
    if small.kind() != DynkinType::A || big.kind() != DynkinType::D || big.rank() != n + 1 {
        return Err(Error::Invalid(format!("expected A_n and D_(n+1), got {} and {}", small.name(), big.name())));
    }
    if choice != n && choice != n + 1 {
        return Err(Error::Invalid(format!("choice must be {n} or {}", n + 1)));
    }
    let g = gamma_q(small, q)?;
    let mut vertices: Vec<(usize, i64)> = Vec::new();
    for id in 0..small.num_positive() {
        let (i, p2) = (g.residue(id), g.position(id).unwrap());
        vertices.push((i, p2));
        vertices.push((n + 1 - i, p2 - 2 * (n as i64 + 1)));
    }
    let a = small.datum();
    let mut arrows = BTreeSet::new();
    for (u, &(i, p)) in vertices.iter().enumerate() {
        for (v, &(j, r)) in vertices.iter().enumerate() {
            if a.adjacent(i, j) && r - p == 2 {
                arrows.insert((u, v));
            }
        }
    }
    let mut last_row: Vec<usize> = (0..vertices.len()).filter(|&k| vertices[k].0 == n).collect();
    last_row.sort_by_key(|&k| std::cmp::Reverse(vertices[k].1));
    let other = if choice == n { n + 1 } else { n };
    for (t, &k) in last_row.iter().enumerate() {
        vertices[k].0 = if t % 2 == 0 { choice } else { other };
    }
    let quiver = label_coordinates(big, &vertices, &arrows)?;
    let folded = fold(big, &quiver)?;
    Ok(TwistedClass {
        recipe: Recipe::FromD { quiver: q.clone(), choice },
        class: folded.class().clone(),
        quiver,
        folded,
    })
}

fn parse_fixture(rs: &RootSystem, text: &str) -> Result<Vec<(usize, i64, RootId)>> {
    let mut out = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let f: Vec<&str> = line.split_whitespace().collect();
        let bad = || Error::Invalid(format!("bad fixture line `{line}`"));
        if f.len() != 3 {
            return Err(bad());
        }
        let r = f[0].parse().map_err(|_| bad())?;
        let p = f[1].parse().map_err(|_| bad())?;
        let id = rs.parse_root(f[2]).ok_or_else(bad)?;
        out.push((r, p, id));
    }
    Ok(out)
}

fn fixture_quiver(rs: &RootSystem, aut: &DiagramAutomorphism, text: &str) -> Result<FoldedQuiver> {
    let rows = parse_fixture(rs, text)?;
    let n = rs.num_positive();
    if rows.len() != n || rows.iter().map(|r| r.2).collect::<BTreeSet<_>>().len() != n {
        return Err(Error::Invalid("fixture does not list every positive root once".into()));
    }
    let mut residues = vec![0; n];
    let mut positions = vec![0; n];
    for &(r, p, id) in &rows {
        residues[id] = r;
        positions[id] = p;
    }
    let mut q = FoldedQuiver {
        residues,
        positions,
        arrows: BTreeSet::new(),
        class: CommutationClass::of_unchecked(rs, &[]),
    };
    q.arrows = q.rule_arrows(aut);
    FoldedQuiver::new(rs, q.residues, q.positions, q.arrows)
}

fn e6() -> Result<(RootSystem, DiagramAutomorphism)> {
    let rs = RootSystem::new(DynkinType::E, 6)?;
    let aut = DiagramAutomorphism::standard(&rs)?;
    Ok((rs, aut))
}

/// The printed folded quiver of the twisted adapted `E_6` class.
pub fn e6_folded_quiver() -> Result<FoldedQuiver> {
    let (rs, aut) = e6()?;
    fixture_quiver(&rs, &aut, E6_FOLDED)
}

/// The printed result of reflecting [`e6_folded_quiver`] at 1.
pub fn e6_folded_r1_quiver() -> Result<FoldedQuiver> {
    let (rs, aut) = e6()?;
    fixture_quiver(&rs, &aut, E6_FOLDED_R1)
}

/// The printed unfolded `E_6` quiver, residues in `1..=6`, positions doubled.
pub fn e6_unfolded_quiver() -> Result<ArQuiver> {
    let (rs, aut) = e6()?;
    let rows = parse_fixture(&rs, E6_UNFOLDED)?;
    let folded = e6_folded_quiver()?;
    let n = rs.num_positive();
    let mut residues = vec![0; n];
    let mut positions = vec![0; n];
    for &(r, p, id) in &rows {
        if aut.orbit(r) != folded.residue(id) || p != folded.position(id) {
            return Err(Error::Invalid(format!("unfolded and folded tables disagree at {}", rs.root(id))));
        }
        residues[id] = r;
        positions[id] = 2 * p;
    }
    Ok(ArQuiver::new(residues, Some(positions), folded.arrows().clone())?)
}

/// Unfolded quiver of an `E_6` folded quiver: residues from the class, positions doubled.
fn e6_unfold(rs: &RootSystem, folded: &FoldedQuiver) -> Result<ArQuiver> {
    let order = ConvexOrder::new(rs, folded.class());
    let residues = (0..rs.num_positive()).map(|id| order.residue(id)).collect();
    let positions = (0..rs.num_positive()).map(|id| 2 * folded.position(id)).collect();
    Ok(ArQuiver::new(residues, Some(positions), folded.arrows().clone())?)
}

/// Reflect a folded quiver at the node `i` of the unfolded diagram:
/// move `alpha_i` to the far left by `d-bar * h-vee` and relabel by `s_i`.
pub fn folded_reflection(rs: &RootSystem, aut: &DiagramAutomorphism, q: &FoldedQuiver, i: usize) -> Result<FoldedQuiver> {
    if !q.is_sink(rs, i) {
        return Err(Error::Invalid(format!("alpha_{i} is not a sink of the folded quiver")));
    }
    let shift = folded_period(aut)?;
    let a = rs.simple_root(i);
    let (ib, p) = q.coordinate(a);
    let newp = p - shift;
    // coordinates of every vertex, re-keyed by its new label
    let mut residues = vec![0; rs.num_positive()];
    let mut positions = vec![0; rs.num_positive()];
    let relabel = |b: RootId| if b == a { a } else { rs.reflect_root(i, b).expect("s_i permutes the other roots") };
    for b in 0..rs.num_positive() {
        let nb = relabel(b);
        residues[nb] = q.residue(b);
        positions[nb] = if b == a { newp } else { q.position(b) };
    }
    let mut arrows: BTreeSet<(RootId, RootId)> = q
        .arrows
        .iter()
        .filter(|&&(u, v)| u != a && v != a)
        .map(|&(u, v)| (relabel(u), relabel(v)))
        .collect();
    for b in 0..rs.num_positive() {
        if b == a {
            continue;
        }
        let j = residues[b];
        if aut.folded_adjacent(ib, j) && positions[b] == newp + aut.symmetrizer(ib).min(aut.symmetrizer(j)) {
            arrows.insert((a, b));
        }
    }
    FoldedQuiver::new(rs, residues, positions, arrows)
}

/// `d-bar * h-vee` of the folded type, in folded position units.
pub fn folded_period(aut: &DiagramAutomorphism) -> Result<i64> {
    let n = aut.num_orbits() as i64;
    match aut.target() {
        FoldedType::B => Ok(2 * (2 * n - 1)),
        FoldedType::C => Ok(2 * (n + 1)),
        FoldedType::F4 => Ok(18),
        FoldedType::G2 => Err(Error::Invalid("triality folding is not supported".into())),
    }
}

/// All twisted adapted classes of a type, each with its quivers, sorted by class.
pub fn twisted_family(rs: &RootSystem) -> Result<Vec<TwistedClass>> {
    let mut out = match rs.kind() {
        DynkinType::A => {
            if rs.rank() < 3 || rs.rank().is_multiple_of(2) {
                return Err(Error::Invalid(format!("{} has no twisted adapted point", rs.name())));
            }
            let small = RootSystem::new(DynkinType::A, rs.rank() - 1)?;
            let mut v = Vec::new();
            for q in DynkinQuiver::all(&small) {
                for side in [TwistSide::First, TwistSide::Last] {
                    v.push(twist_from_a(&small, rs, &q, side)?);
                }
            }
            v
        }
        DynkinType::D => {
            let n = rs.rank() - 1;
            let small = RootSystem::new(DynkinType::A, n)?;
            let mut v = Vec::new();
            for q in DynkinQuiver::all(&small) {
                for choice in [n, n + 1] {
                    v.push(twist_from_d(&small, rs, &q, choice)?);
                }
            }
            v
        }
        DynkinType::E => e6_family(rs)?,
    };
    out.sort_by(|a, b| a.class.cmp(&b.class));
    Ok(out)
}

fn e6_family(rs: &RootSystem) -> Result<Vec<TwistedClass>> {
    let aut = DiagramAutomorphism::standard(rs)?;
    let start = e6_folded_quiver()?;
    let mut seen: BTreeMap<CommutationClass, (FoldedQuiver, Vec<usize>)> = BTreeMap::new();
    let mut queue = VecDeque::new();
    seen.insert(start.class().clone(), (start.clone(), vec![]));
    queue.push_back(start.class().clone());
    while let Some(c) = queue.pop_front() {
        let (q, path) = seen[&c].clone();
        for i in 1..=rs.rank() {
            if q.is_sink(rs, i) {
                let r = folded_reflection(rs, &aut, &q, i)?;
                if !seen.contains_key(r.class()) {
                    let mut p = path.clone();
                    p.push(i);
                    queue.push_back(r.class().clone());
                    seen.insert(r.class().clone(), (r, p));
                }
            }
        }
    }
    seen.into_iter()
        .map(|(class, (folded, reflections))| {
            Ok(TwistedClass {
                recipe: Recipe::E6 { reflections },
                quiver: e6_unfold(rs, &folded)?,
                class,
                folded,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arquiver::hasse_quiver;
    use crate::words::{cluster_point, twisted_adapted_point, Side};

    fn a(n: usize) -> RootSystem {
        RootSystem::new(DynkinType::A, n).unwrap()
    }

    fn example_q(rs: &RootSystem) -> DynkinQuiver {
        DynkinQuiver::new(rs, &[(2, 1), (2, 3), (3, 4)]).unwrap()
    }

    #[test]
    fn word_rule_on_printed_example() {
        let w = [4, 1, 3, 2, 4, 1, 3, 2, 4, 3];
        let gt = twist_word_from_a(4, &w, TwistSide::First);
        let lt = twist_word_from_a(4, &w, TwistSide::Last);
        assert_eq!(gt, vec![5, 1, 3, 4, 3, 2, 3, 5, 1, 4, 3, 2, 3, 5, 4]);
        assert_eq!(lt, vec![5, 1, 4, 3, 2, 3, 5, 1, 4, 3, 2, 3, 5, 4, 3]);
        let rs = a(5);
        let printed_lt = [5, 4, 1, 3, 2, 3, 5, 4, 1, 3, 2, 3, 5, 4, 3];
        assert!(CommutationClass::of_longest(&rs, &lt).unwrap().contains(&rs, &printed_lt));
    }

    #[test]
    fn printed_fourteen_letter_word_needs_its_missing_letter() {
        let rs = a(5);
        let printed = [5, 3, 1, 4, 3, 5, 3, 1, 4, 3, 2, 5, 3, 4];
        assert!(words::check_longest(&rs, &printed).is_err());
        let mut fixed = printed.to_vec();
        fixed.insert(5, 2);
        let gt = twist_word_from_a(4, &[4, 1, 3, 2, 4, 1, 3, 2, 4, 3], TwistSide::First);
        assert!(CommutationClass::of_longest(&rs, &gt).unwrap().contains(&rs, &fixed));
    }

    #[test]
    fn coordinate_construction_matches_word_rule() {
        let small = a(4);
        let big = a(5);
        for q in DynkinQuiver::all(&small) {
            let w = q.adapted_word(&small);
            for side in [TwistSide::First, TwistSide::Last] {
                let t = twist_from_a(&small, &big, &q, side).unwrap();
                let expected = CommutationClass::of_longest(&big, &twist_word_from_a(4, &w, side)).unwrap();
                assert_eq!(t.class, expected);
                assert_eq!(hasse_quiver(&big, &t.class).arrows(), t.quiver.arrows());
            }
        }
    }

    #[test]
    fn printed_d5_quivers() {
        let small = a(4);
        let big = RootSystem::new(DynkinType::D, 5).unwrap();
        let q = example_q(&small);
        for (choice, fours, fives) in [(4, vec![-7, -3, 1], vec![-5, -1]), (5, vec![-5, -1], vec![-7, -3, 1])] {
            let t = twist_from_d(&small, &big, &q, choice).unwrap();
            let at = |r: usize| {
                let mut v: Vec<i64> = (0..big.num_positive())
                    .filter(|&id| t.quiver.residue(id) == r)
                    .map(|id| t.quiver.position(id).unwrap() / 2)
                    .collect();
                v.sort();
                v
            };
            assert_eq!(at(1), vec![-8, -6, -4, -2, 0]);
            assert_eq!(at(2), vec![-9, -7, -5, -3, -1]);
            assert_eq!(at(3), vec![-8, -6, -4, -2, 0]);
            assert_eq!(at(4), fours);
            assert_eq!(at(5), fives);
            assert_eq!(hasse_quiver(&big, &t.class).arrows(), t.quiver.arrows());
        }
    }

    #[test]
    fn families_fill_the_foldable_point() {
        for (kind, rank, count) in [(DynkinType::A, 3, 4), (DynkinType::A, 5, 16), (DynkinType::D, 4, 8), (DynkinType::D, 5, 16)] {
            let rs = RootSystem::new(kind, rank).unwrap();
            let fam = twisted_family(&rs).unwrap();
            let point = twisted_adapted_point(&rs).unwrap();
            assert_eq!(fam.len(), count);
            assert_eq!(point.len(), count);
            let classes: Vec<_> = fam.iter().map(|t| t.class.clone()).collect();
            assert_eq!(classes.as_slice(), point.classes());
            let aut = DiagramAutomorphism::standard(&rs).unwrap();
            for t in &fam {
                assert_eq!(t.folded.rule_arrows(&aut), *t.folded.arrows(), "{}", rs.name());
            }
        }
    }

    #[test]
    fn e6_fixture_and_reflection() {
        let (rs, aut) = e6().unwrap();
        let f = e6_folded_quiver().unwrap();
        let product = words::twisted_product_word(&rs, &aut, &[1, 2, 6, 3]).unwrap();
        assert_eq!(*f.class(), CommutationClass::of_longest(&rs, &product).unwrap());
        let unf = e6_unfolded_quiver().unwrap();
        let order = ConvexOrder::new(&rs, f.class());
        assert!((0..36).all(|id| unf.residue(id) == order.residue(id)));
        assert_eq!(hasse_quiver(&rs, f.class()).arrows(), f.arrows());

        let r1 = folded_reflection(&rs, &aut, &f, 1).unwrap();
        assert_eq!(r1, e6_folded_r1_quiver().unwrap());
        assert_eq!(*r1.class(), f.class().reflect(&rs, 1, Side::Right));
        assert!(folded_reflection(&rs, &aut, &f, 2).is_err());
    }

    #[test]
    fn generic_folded_reflection_matches_constructions() {
        for (kind, rank) in [(DynkinType::A, 5), (DynkinType::D, 5)] {
            let rs = RootSystem::new(kind, rank).unwrap();
            let aut = DiagramAutomorphism::standard(&rs).unwrap();
            let fam = twisted_family(&rs).unwrap();
            for t in &fam {
                for i in 1..=rank {
                    if !t.folded.is_sink(&rs, i) {
                        continue;
                    }
                    let r = folded_reflection(&rs, &aut, &t.folded, i).unwrap();
                    let target = t.class.reflect(&rs, i, Side::Right);
                    assert_eq!(*r.class(), target);
                    let other = &fam.iter().find(|u| u.class == target).unwrap().folded;
                    assert_eq!(r.normalized(0), other.normalized(0), "{} r{}", rs.name(), i);
                }
            }
        }
    }

    #[test]
    fn e6_point_has_32_classes() {
        let (rs, _) = e6().unwrap();
        let fam = twisted_family(&rs).unwrap();
        assert_eq!(fam.len(), 32);
        let point = cluster_point(&rs, &fam[0].class);
        let classes: Vec<_> = fam.iter().map(|t| t.class.clone()).collect();
        assert_eq!(classes.as_slice(), point.classes());
    }
}
