//! Reduced words, commutation classes and the reflection moves between them.
//!
//! A commutation class is handled through its heap: the partial order on
//! word positions generated by `k < l` whenever the letters at `k` and `l`
//! are equal or adjacent in the Dynkin diagram. Members of the class are the
//! linear extensions of the heap, so nothing here needs to list a class
//! unless explicitly asked to.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::rootset::RootSet;
use crate::rootsys::{DiagramAutomorphism, DynkinType, RootId, RootSystem};

/// Default bound on the number of words materialized by [`CommutationClass::members`].
pub const DEFAULT_CAP: usize = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("letter {letter} at position {position} is not a node of the diagram")]
    LetterOutOfRange { position: usize, letter: usize },
    #[error("word is not reduced (position {position})")]
    NotReduced { position: usize },
    #[error("word has length {length}, the longest element has length {expected}")]
    NotLongest { length: usize, expected: usize },
    #[error("enumeration exceeded the cap of {cap}")]
    CapExceeded { cap: usize },
    #[error("automorphism acts on {found} nodes, diagram has {expected}")]
    AutomorphismMismatch { found: usize, expected: usize },
}

/// Side of a reflection move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// `beta_k = s_{i_1} ... s_{i_{k-1}}(alpha_{i_k})` for each position.
pub fn root_sequence(rs: &RootSystem, letters: &[usize]) -> Result<Vec<RootId>, WordError> {
    check_letters(rs, letters)?;
    let mut out = Vec::with_capacity(letters.len());
    for (k, &i) in letters.iter().enumerate() {
        let mut v = rs.root(rs.simple_root(i)).0.clone();
        for &j in letters[..k].iter().rev() {
            v = rs.reflect_vec(j, &v);
        }
        match rs.root_id(&v) {
            Some(id) => out.push(id),
            None => return Err(WordError::NotReduced { position: k + 1 }),
        }
    }
    Ok(out)
}

fn check_letters(rs: &RootSystem, letters: &[usize]) -> Result<(), WordError> {
    for (k, &i) in letters.iter().enumerate() {
        if i == 0 || i > rs.rank() {
            return Err(WordError::LetterOutOfRange {
                position: k + 1,
                letter: i,
            });
        }
    }
    Ok(())
}

/// Checks that `letters` is a reduced word of the longest element.
pub fn check_longest(rs: &RootSystem, letters: &[usize]) -> Result<Vec<RootId>, WordError> {
    if letters.len() != rs.num_positive() {
        check_letters(rs, letters)?;
        return Err(WordError::NotLongest {
            length: letters.len(),
            expected: rs.num_positive(),
        });
    }
    root_sequence(rs, letters)
}

/// A word known to be reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedWord(Vec<usize>);

impl ReducedWord {
    pub fn new(rs: &RootSystem, letters: Vec<usize>) -> Result<Self, WordError> {
        root_sequence(rs, &letters)?;
        Ok(ReducedWord(letters))
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_longest(&self, rs: &RootSystem) -> bool {
        self.0.len() == rs.num_positive()
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_word(&self.0))
    }
}

/// `s4 s1 s3 ...` rendering.
pub fn format_word(letters: &[usize]) -> String {
    letters
        .iter()
        .map(|i| format!("s{i}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Parse a word given as `4,1,3`, `4 1 3`, `s4s1s3` or `s4 s1 s3`.
pub fn parse_word(s: &str) -> Option<Vec<usize>> {
    let cleaned: String = s
        .chars()
        .map(|c| if c == 's' || c == ',' { ' ' } else { c })
        .collect();
    let letters: Option<Vec<usize>> = cleaned.split_whitespace().map(|t| t.parse().ok()).collect();
    letters.filter(|l| !l.is_empty())
}

/// Strict transitive closure of the heap of a word, as position bitmasks.
#[derive(Debug, Clone)]
pub struct Heap {
    letters: Vec<usize>,
    below: Vec<u128>,
}

impl Heap {
    pub fn new(rs: &RootSystem, letters: &[usize]) -> Self {
        assert!(letters.len() <= 128, "heaps are limited to 128 positions");
        let d = rs.datum();
        let mut below = vec![0u128; letters.len()];
        for l in 0..letters.len() {
            let mut acc = 0u128;
            for k in 0..l {
                let (a, b) = (letters[k], letters[l]);
                if a == b || d.adjacent(a, b) {
                    acc |= 1u128 << k | below[k];
                }
            }
            below[l] = acc;
        }
        Heap {
            letters: letters.to_vec(),
            below,
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    /// Is position `k` below position `l` in every linear extension?
    pub fn precedes(&self, k: usize, l: usize) -> bool {
        self.below[l] >> k & 1 == 1
    }

    pub fn below_mask(&self, l: usize) -> u128 {
        self.below[l]
    }

    /// Positions with nothing below them.
    pub fn minimal_positions(&self) -> Vec<usize> {
        (0..self.len()).filter(|&l| self.below[l] == 0).collect()
    }

    /// Positions with nothing above them.
    pub fn maximal_positions(&self) -> Vec<usize> {
        let mut has_above = 0u128;
        for &b in &self.below {
            has_above |= b;
        }
        (0..self.len()).filter(|&l| has_above >> l & 1 == 0).collect()
    }

    /// Lexicographically least linear extension, as a word.
    pub fn lex_min_word(&self) -> Vec<usize> {
        let n = self.len();
        let mut placed = 0u128;
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            let next = (0..n)
                .filter(|&l| placed >> l & 1 == 0 && self.below[l] & !placed == 0)
                .min_by_key(|&l| self.letters[l])
                .expect("heap is acyclic");
            placed |= 1u128 << next;
            out.push(self.letters[next]);
        }
        out
    }
}

/// A commutation class, identified by its lexicographically least member.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CommutationClass {
    canonical: Vec<usize>,
}

impl CommutationClass {
    /// Class of a reduced word (of any length).
    pub fn of(rs: &RootSystem, letters: &[usize]) -> Result<Self, WordError> {
        root_sequence(rs, letters)?;
        Ok(Self::of_unchecked(rs, letters))
    }

    /// Class of a reduced word of the longest element.
    pub fn of_longest(rs: &RootSystem, letters: &[usize]) -> Result<Self, WordError> {
        check_longest(rs, letters)?;
        Ok(Self::of_unchecked(rs, letters))
    }

    pub(crate) fn of_unchecked(rs: &RootSystem, letters: &[usize]) -> Self {
        CommutationClass {
            canonical: Heap::new(rs, letters).lex_min_word(),
        }
    }

    pub fn canonical(&self) -> &[usize] {
        &self.canonical
    }

    pub fn heap(&self, rs: &RootSystem) -> Heap {
        Heap::new(rs, &self.canonical)
    }

    /// Whether `letters` is a member (same multiset of letters, same heap).
    pub fn contains(&self, rs: &RootSystem, letters: &[usize]) -> bool {
        letters.len() == self.canonical.len()
            && root_sequence(rs, letters).is_ok()
            && Heap::new(rs, letters).lex_min_word() == self.canonical
    }

    /// Letters `i` such that some member starts with `s_i`.
    pub fn sinks(&self, rs: &RootSystem) -> BTreeSet<usize> {
        let h = self.heap(rs);
        h.minimal_positions().into_iter().map(|p| h.letters[p]).collect()
    }

    /// Letters `i` such that some member ends with `s_i`.
    pub fn sources(&self, rs: &RootSystem) -> BTreeSet<usize> {
        let h = self.heap(rs);
        h.maximal_positions().into_iter().map(|p| h.letters[p]).collect()
    }

    /// All members, by breadth-first closure under commuting swaps.
    pub fn members(&self, rs: &RootSystem, cap: usize) -> Result<Vec<Vec<usize>>, WordError> {
        let d = rs.datum();
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(self.canonical.clone());
        queue.push_back(self.canonical.clone());
        while let Some(w) = queue.pop_front() {
            for k in 0..w.len().saturating_sub(1) {
                let (a, b) = (w[k], w[k + 1]);
                if a != b && !d.adjacent(a, b) {
                    let mut v = w.clone();
                    v.swap(k, k + 1);
                    if !seen.contains(&v) {
                        if seen.len() >= cap {
                            return Err(WordError::CapExceeded { cap });
                        }
                        seen.insert(v.clone());
                        queue.push_back(v);
                    }
                }
            }
        }
        let mut out: Vec<_> = seen.into_iter().collect();
        out.sort();
        Ok(out)
    }

    /// The reflection move `r_i` on the given side; identity when no member
    /// starts (right) or ends (left) with `s_i`.
    pub fn reflect(&self, rs: &RootSystem, i: usize, side: Side) -> CommutationClass {
        let h = self.heap(rs);
        let w = &self.canonical;
        match side {
            Side::Right => {
                let Some(p) = h.minimal_positions().into_iter().find(|&p| w[p] == i) else {
                    return self.clone();
                };
                let mut v: Vec<usize> = w.iter().enumerate().filter(|&(k, _)| k != p).map(|(_, &x)| x).collect();
                v.push(rs.star(i));
                Self::of_unchecked(rs, &v)
            }
            Side::Left => {
                let Some(p) = h.maximal_positions().into_iter().find(|&p| w[p] == i) else {
                    return self.clone();
                };
                let mut v = vec![rs.star(i)];
                v.extend(w.iter().enumerate().filter(|&(k, _)| k != p).map(|(_, &x)| x));
                Self::of_unchecked(rs, &v)
            }
        }
    }

    /// Letter counts per orbit of `aut`.
    pub fn composition(&self, aut: &DiagramAutomorphism) -> Vec<usize> {
        let mut c = vec![0; aut.num_orbits()];
        for &i in &self.canonical {
            c[aut.orbit(i) - 1] += 1;
        }
        c
    }
}

impl fmt::Display for CommutationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", format_word(&self.canonical))
    }
}

/// A set of classes closed under all reflection moves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterPoint {
    classes: Vec<CommutationClass>,
}

impl ClusterPoint {
    pub fn classes(&self) -> &[CommutationClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn contains(&self, c: &CommutationClass) -> bool {
        self.classes.binary_search(c).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, CommutationClass> {
        self.classes.iter()
    }
}

/// Breadth-first closure of a class of `w_0` under left and right reflections.
pub fn cluster_point(rs: &RootSystem, class: &CommutationClass) -> ClusterPoint {
    let mut seen: BTreeSet<CommutationClass> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(class.clone());
    queue.push_back(class.clone());
    while let Some(c) = queue.pop_front() {
        let moves: Vec<(usize, Side)> = c
            .sinks(rs)
            .into_iter()
            .map(|i| (i, Side::Right))
            .chain(c.sources(rs).into_iter().map(|i| (i, Side::Left)))
            .collect();
        for (i, side) in moves {
            let d = c.reflect(rs, i, side);
            if seen.insert(d.clone()) {
                queue.push_back(d);
            }
        }
    }
    ClusterPoint {
        classes: seen.into_iter().collect(),
    }
}

/// Letter counts per orbit; taken from the first class, which every class shares.
pub fn coxeter_composition(
    rs: &RootSystem,
    cluster: &ClusterPoint,
    aut: &DiagramAutomorphism,
) -> Result<Vec<usize>, WordError> {
    let nodes = (1..=rs.rank()).filter(|&i| aut.orbit(i) >= 1).count();
    if nodes != rs.rank() || (1..=rs.rank()).any(|i| aut.apply(i) > rs.rank()) {
        return Err(WordError::AutomorphismMismatch {
            found: nodes,
            expected: rs.rank(),
        });
    }
    Ok(cluster
        .classes
        .first()
        .map(|c| c.composition(aut))
        .unwrap_or_else(|| vec![0; aut.num_orbits()]))
}

pub fn is_foldable(composition: &[usize]) -> bool {
    composition.windows(2).all(|w| w[0] == w[1])
}

/// Every product of one simple reflection per orbit, in every order,
/// as canonical words (distinct group elements).
pub fn twisted_coxeter_elements(rs: &RootSystem, aut: &DiagramAutomorphism) -> Vec<Vec<usize>> {
    let orbits: Vec<Vec<usize>> = (1..=aut.num_orbits()).map(|k| aut.orbit_members(k)).collect();
    let mut choices: Vec<Vec<usize>> = vec![vec![]];
    for orbit in &orbits {
        choices = choices
            .into_iter()
            .flat_map(|c| {
                orbit.iter().map(move |&i| {
                    let mut c = c.clone();
                    c.push(i);
                    c
                })
            })
            .collect();
    }
    let mut out = BTreeSet::new();
    for c in choices {
        for p in permutations(&c) {
            out.insert(Heap::new(rs, &p).lex_min_word());
        }
    }
    out.into_iter().collect()
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for k in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(k);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// `prod_k (s_{j_1} ... s_{j_m})^{k v}` with enough factors to reach length `N`.
pub fn twisted_product_word(
    rs: &RootSystem,
    aut: &DiagramAutomorphism,
    coxeter: &[usize],
) -> Result<Vec<usize>, WordError> {
    let n = rs.num_positive();
    if coxeter.is_empty() || !n.is_multiple_of(coxeter.len()) {
        return Err(WordError::NotLongest {
            length: coxeter.len(),
            expected: n,
        });
    }
    let mut word = Vec::with_capacity(n);
    let mut factor = coxeter.to_vec();
    for _ in 0..n / coxeter.len() {
        word.extend_from_slice(&factor);
        factor = factor.iter().map(|&i| aut.apply(i)).collect();
    }
    check_longest(rs, &word)?;
    Ok(word)
}

/// The twisted Coxeter element used to seed the foldable cluster point:
/// `s_1 ... s_n` for `A_{2n-1}` and `D_{n+1}`, `s_1 s_2 s_6 s_3` for `E_6`.
pub fn standard_twisted_coxeter(rs: &RootSystem) -> Vec<usize> {
    match rs.kind() {
        DynkinType::A => (1..=rs.rank().div_ceil(2)).collect(),
        DynkinType::D => (1..rs.rank()).collect(),
        DynkinType::E => vec![1, 2, 6, 3],
    }
}

/// The foldable cluster point generated by the twisted product word.
pub fn twisted_adapted_point(rs: &RootSystem) -> Result<ClusterPoint, crate::Error> {
    let aut = DiagramAutomorphism::standard(rs)?;
    let word = twisted_product_word(rs, &aut, &standard_twisted_coxeter(rs))?;
    Ok(cluster_point(rs, &CommutationClass::of_unchecked(rs, &word)))
}

/// Positions of a root set inside a word's root sequence.
pub fn positions_of(sequence: &[RootId], set: RootSet) -> Vec<usize> {
    sequence
        .iter()
        .enumerate()
        .filter(|(_, &r)| set.contains(r))
        .map(|(k, _)| k)
        .collect()
}
