//! Finite simply-laced root systems, Dynkin diagram automorphisms and the
//! orbit data used when folding onto the doubly-laced types.
//!
//! Nodes are labelled `1..=rank` exactly as in the usual Dynkin pictures:
//!
//! * `A_n`: the chain `1 - 2 - ... - n`;
//! * `D_n`: the chain `1 - ... - (n-2)` with `n-1` and `n` both attached to `n-2`;
//! * `E_6`: the chain `1 - 2 - 3 - 4 - 5` with `6` attached to `3`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rootset::RootSet;

/// Index of a positive root in [`RootSystem::roots`].
pub type RootId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootSystemError {
    #[error("unsupported Dynkin type {kind}{rank}")]
    Unsupported { kind: DynkinType, rank: usize },
    #[error("{kind}{rank} has {count} positive roots, more than the supported {max}")]
    TooManyRoots {
        kind: DynkinType,
        rank: usize,
        count: usize,
        max: usize,
    },
    #[error("no printed diagram automorphism for {0}")]
    NoAutomorphism(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DynkinType {
    A,
    D,
    E,
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            DynkinType::A => 'A',
            DynkinType::D => 'D',
            DynkinType::E => 'E',
        };
        write!(f, "{c}")
    }
}

impl std::str::FromStr for DynkinType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "A" | "a" => Ok(DynkinType::A),
            "D" | "d" => Ok(DynkinType::D),
            "E" | "e" => Ok(DynkinType::E),
            other => Err(format!("unknown Dynkin type `{other}`")),
        }
    }
}

/// Symmetric Cartan matrix of a connected simply-laced Dynkin diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanDatum {
    kind: DynkinType,
    rank: usize,
    matrix: Vec<Vec<i32>>,
}

impl CartanDatum {
    pub fn new(kind: DynkinType, rank: usize) -> Result<Self, RootSystemError> {
        let edges = match (kind, rank) {
            (DynkinType::A, n) if n >= 1 => (1..n).map(|i| (i, i + 1)).collect::<Vec<_>>(),
            (DynkinType::D, n) if n >= 4 => {
                let mut e: Vec<_> = (1..n - 2).map(|i| (i, i + 1)).collect();
                e.push((n - 2, n - 1));
                e.push((n - 2, n));
                e
            }
            (DynkinType::E, 6) => vec![(1, 2), (2, 3), (3, 4), (4, 5), (3, 6)],
            _ => return Err(RootSystemError::Unsupported { kind, rank }),
        };
        let mut matrix = vec![vec![0; rank]; rank];
        for (i, row) in matrix.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (a, b) in edges {
            matrix[a - 1][b - 1] = -1;
            matrix[b - 1][a - 1] = -1;
        }
        Ok(CartanDatum { kind, rank, matrix })
    }

    pub fn kind(&self) -> DynkinType {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `a_{ij}` for 1-based nodes.
    pub fn entry(&self, i: usize, j: usize) -> i32 {
        self.matrix[i - 1][j - 1]
    }

    pub fn matrix(&self) -> &[Vec<i32>] {
        &self.matrix
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.entry(i, j) != 0
    }

    pub fn neighbours(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (1..=self.rank).filter(move |&j| self.adjacent(i, j))
    }

    /// Edges `(i, j)` with `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 1..=self.rank {
            for j in i + 1..=self.rank {
                if self.adjacent(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// Coefficient vector of an element of the root lattice over the simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root(pub Vec<i32>);

impl Root {
    pub fn height(&self) -> i32 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn coeffs(&self) -> &[i32] {
        &self.0
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        if self.0.iter().all(|&c| (0..10).contains(&c)) {
            write!(f, "{}", digits.concat())
        } else {
            write!(f, "({})", digits.join(","))
        }
    }
}

/// Largest number of positive roots handled; root subsets are `u128` masks.
pub const MAX_POSITIVE_ROOTS: usize = 128;

/// Positive roots of a simply-laced type together with the reflection and
/// addition tables used throughout the crate.
#[derive(Debug, Clone)]
pub struct RootSystem {
    datum: CartanDatum,
    roots: Vec<Root>,
    index: HashMap<Vec<i32>, RootId>,
    simple: Vec<RootId>,
    star: Vec<usize>,
    reflection: Vec<Vec<Option<RootId>>>,
    sums: Vec<Vec<Option<RootId>>>,
}

impl RootSystem {
    pub fn new(kind: DynkinType, rank: usize) -> Result<Self, RootSystemError> {
        let datum = CartanDatum::new(kind, rank)?;
        let n = rank;
        let simple_vec = |i: usize| {
            let mut v = vec![0; n];
            v[i - 1] = 1;
            v
        };

        let mut seen: HashMap<Vec<i32>, ()> = HashMap::new();
        let mut queue = VecDeque::new();
        for i in 1..=n {
            let v = simple_vec(i);
            seen.insert(v.clone(), ());
            queue.push_back(v);
        }
        while let Some(v) = queue.pop_front() {
            for i in 1..=n {
                let w = reflect_coeffs(&datum, i, &v);
                if w.iter().all(|&c| c >= 0) && !seen.contains_key(&w) {
                    seen.insert(w.clone(), ());
                    queue.push_back(w);
                }
            }
        }
        let mut roots: Vec<Root> = seen.into_keys().map(Root).collect();
        roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.0.cmp(&b.0)));
        if roots.len() > MAX_POSITIVE_ROOTS {
            return Err(RootSystemError::TooManyRoots {
                kind,
                rank,
                count: roots.len(),
                max: MAX_POSITIVE_ROOTS,
            });
        }
        let index: HashMap<Vec<i32>, RootId> = roots
            .iter()
            .enumerate()
            .map(|(id, r)| (r.0.clone(), id))
            .collect();
        let simple = (1..=n).map(|i| index[&simple_vec(i)]).collect();

        let reflection = (1..=n)
            .map(|i| {
                roots
                    .iter()
                    .map(|r| index.get(&reflect_coeffs(&datum, i, &r.0)).copied())
                    .collect()
            })
            .collect();
        let sums = roots
            .iter()
            .map(|a| {
                roots
                    .iter()
                    .map(|b| {
                        let s: Vec<i32> = a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect();
                        index.get(&s).copied()
                    })
                    .collect()
            })
            .collect();

        let mut rs = RootSystem {
            datum,
            roots,
            index,
            simple,
            star: Vec::new(),
            reflection,
            sums,
        };
        rs.star = rs.compute_star();
        Ok(rs)
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn kind(&self) -> DynkinType {
        self.datum.kind
    }

    pub fn rank(&self) -> usize {
        self.datum.rank
    }

    /// Short name such as `A5` or `E6`.
    pub fn name(&self) -> String {
        format!("{}{}", self.kind(), self.rank())
    }

    /// Number of positive roots, which is also the length of `w_0`.
    pub fn num_positive(&self) -> usize {
        self.roots.len()
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn root(&self, id: RootId) -> &Root {
        &self.roots[id]
    }

    pub fn root_id(&self, coeffs: &[i32]) -> Option<RootId> {
        self.index.get(coeffs).copied()
    }

    pub fn simple_root(&self, i: usize) -> RootId {
        self.simple[i - 1]
    }

    /// The node `i` when `id` is the simple root `alpha_i`.
    pub fn simple_index(&self, id: RootId) -> Option<usize> {
        self.simple.iter().position(|&s| s == id).map(|p| p + 1)
    }

    pub fn height(&self, id: RootId) -> i32 {
        self.roots[id].height()
    }

    /// `<h_i, v>` for a lattice vector `v`.
    pub fn pairing(&self, i: usize, v: &[i32]) -> i32 {
        self.datum.matrix[i - 1]
            .iter()
            .zip(v)
            .map(|(a, c)| a * c)
            .sum()
    }

    /// `s_i(v)` on coefficient vectors.
    pub fn reflect_vec(&self, i: usize, v: &[i32]) -> Vec<i32> {
        reflect_coeffs(&self.datum, i, v)
    }

    /// `s_i(beta)` when it is again positive (i.e. `beta != alpha_i`).
    pub fn reflect_root(&self, i: usize, id: RootId) -> Option<RootId> {
        self.reflection[i - 1][id]
    }

    /// `a + b` when it is a positive root.
    pub fn add(&self, a: RootId, b: RootId) -> Option<RootId> {
        self.sums[a][b]
    }

    /// `a - b` when it is a positive root.
    pub fn sub(&self, a: RootId, b: RootId) -> Option<RootId> {
        let d: Vec<i32> = self.roots[a]
            .0
            .iter()
            .zip(&self.roots[b].0)
            .map(|(x, y)| x - y)
            .collect();
        self.root_id(&d)
    }

    /// The involution `i -> i*` with `w_0(alpha_i) = -alpha_{i*}`.
    pub fn star(&self, i: usize) -> usize {
        self.star[i - 1]
    }

    pub fn all_roots(&self) -> RootSet {
        RootSet::full(self.num_positive())
    }

    /// A reduced word of `w_0`, obtained by walking `rho` to `-rho`.
    pub fn longest_word(&self) -> Vec<usize> {
        let n = self.rank();
        // fundamental-weight coordinates of rho
        let mut lambda = vec![1i32; n];
        let mut applied = Vec::new();
        while let Some(i) = (0..n).find(|&i| lambda[i] > 0) {
            let c = lambda[i];
            for (j, l) in lambda.iter_mut().enumerate() {
                *l -= c * self.datum.matrix[j][i];
            }
            applied.push(i + 1);
        }
        applied.reverse();
        applied
    }

    fn compute_star(&self) -> Vec<usize> {
        let word = self.longest_word();
        (1..=self.rank())
            .map(|i| {
                let mut v = self.roots[self.simple_root(i)].0.clone();
                for &j in word.iter().rev() {
                    v = self.reflect_vec(j, &v);
                }
                let neg: Vec<i32> = v.iter().map(|c| -c).collect();
                let id = self.root_id(&neg).expect("w0 maps simple roots to negative simple roots");
                self.simple_index(id).expect("image is simple")
            })
            .collect()
    }

    /// Parse a root given either as a digit string (`"011"`) or comma list.
    pub fn parse_root(&self, s: &str) -> Option<RootId> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let coeffs: Vec<i32> = if s.contains(',') {
            s.split(',').map(|t| t.trim().parse().ok()).collect::<Option<_>>()?
        } else {
            s.chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| c.to_digit(10).map(|d| d as i32))
                .collect::<Option<_>>()?
        };
        if coeffs.len() != self.rank() {
            return None;
        }
        self.root_id(&coeffs)
    }
}

fn reflect_coeffs(datum: &CartanDatum, i: usize, v: &[i32]) -> Vec<i32> {
    let c: i32 = datum.matrix[i - 1].iter().zip(v).map(|(a, x)| a * x).sum();
    let mut w = v.to_vec();
    w[i - 1] -= c;
    w
}

/// Which doubly-laced (or `G_2`) diagram a folding produces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FoldedType {
    /// `A_{2n-1} -> B_n`
    B,
    /// `D_{n+1} -> C_n`
    C,
    /// `E_6 -> F_4`
    F4,
    /// `D_4 -> G_2` (triality)
    G2,
}

/// A diagram automorphism `i -> i^v` together with its orbit labelling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramAutomorphism {
    target: FoldedType,
    perm: Vec<usize>,
    order: usize,
    orbit_label: Vec<usize>,
    num_orbits: usize,
    symmetrizer: Vec<i64>,
    folded_edges: Vec<(usize, usize)>,
}

impl DiagramAutomorphism {
    /// The involution folding `A_{2n-1}`, `D_{n+1}` or `E_6` onto `B_n`,
    /// `C_n` or `F_4`.
    pub fn standard(rs: &RootSystem) -> Result<Self, RootSystemError> {
        let r = rs.rank();
        match rs.kind() {
            DynkinType::A if r % 2 == 1 && r >= 3 => {
                let n = r.div_ceil(2);
                let perm = (1..=r).map(|i| 2 * n - i).collect();
                let labels = (1..=r).map(|i| i.min(2 * n - i)).collect();
                let mut d = vec![2; n];
                d[n - 1] = 1;
                Ok(Self::build(FoldedType::B, perm, labels, d, rs))
            }
            DynkinType::D => {
                let n = r - 1;
                let perm = (1..=r)
                    .map(|i| match i {
                        i if i == n => n + 1,
                        i if i == n + 1 => n,
                        i => i,
                    })
                    .collect();
                let labels = (1..=r).map(|i| i.min(n)).collect();
                let mut d = vec![1; n];
                d[n - 1] = 2;
                Ok(Self::build(FoldedType::C, perm, labels, d, rs))
            }
            DynkinType::E => {
                let perm = vec![5, 4, 3, 2, 1, 6];
                let labels = vec![1, 2, 3, 2, 1, 4];
                Ok(Self::build(FoldedType::F4, perm, labels, vec![2, 2, 1, 1], rs))
            }
            _ => Err(RootSystemError::NoAutomorphism(rs.name())),
        }
    }

    /// The order-3 automorphism of `D_4` (`1 -> 3 -> 4 -> 1`, `2` fixed).
    pub fn triality(rs: &RootSystem) -> Result<Self, RootSystemError> {
        if rs.kind() != DynkinType::D || rs.rank() != 4 {
            return Err(RootSystemError::NoAutomorphism(rs.name()));
        }
        let perm = vec![3, 2, 4, 1];
        let labels = vec![1, 2, 1, 1];
        Ok(Self::build(FoldedType::G2, perm, labels, vec![1, 3], rs))
    }

    /// The identity automorphism; every node is its own orbit.
    pub fn trivial(rs: &RootSystem) -> Self {
        let r = rs.rank();
        DiagramAutomorphism {
            target: FoldedType::C,
            perm: (1..=r).collect(),
            order: 1,
            orbit_label: (1..=r).collect(),
            num_orbits: r,
            symmetrizer: vec![1; r],
            folded_edges: rs.datum().edges(),
        }
    }

    fn build(
        target: FoldedType,
        perm: Vec<usize>,
        orbit_label: Vec<usize>,
        symmetrizer: Vec<i64>,
        rs: &RootSystem,
    ) -> Self {
        let mut order = 1;
        let mut cur = perm.clone();
        while cur.iter().enumerate().any(|(i, &p)| p != i + 1) {
            cur = cur.iter().map(|&p| perm[p - 1]).collect();
            order += 1;
        }
        let num_orbits = *orbit_label.iter().max().unwrap_or(&0);
        let mut folded_edges = Vec::new();
        for (a, b) in rs.datum().edges() {
            let (x, y) = (orbit_label[a - 1], orbit_label[b - 1]);
            let e = (x.min(y), x.max(y));
            if x != y && !folded_edges.contains(&e) {
                folded_edges.push(e);
            }
        }
        folded_edges.sort();
        DiagramAutomorphism {
            target,
            perm,
            order,
            orbit_label,
            num_orbits,
            symmetrizer,
            folded_edges,
        }
    }

    pub fn target(&self) -> FoldedType {
        self.target
    }

    /// `i^v`.
    pub fn apply(&self, i: usize) -> usize {
        self.perm[i - 1]
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Orbit label `i -> i-bar` in `1..=num_orbits`.
    pub fn orbit(&self, i: usize) -> usize {
        self.orbit_label[i - 1]
    }

    pub fn num_orbits(&self) -> usize {
        self.num_orbits
    }

    pub fn orbit_members(&self, k: usize) -> Vec<usize> {
        (1..=self.perm.len()).filter(|&i| self.orbit(i) == k).collect()
    }

    /// Entry `d_k` of the symmetrizer of the folded Cartan matrix, with
    /// long roots carrying 2 (3 for `G_2`) and short roots 1.
    pub fn symmetrizer(&self, k: usize) -> i64 {
        self.symmetrizer[k - 1]
    }

    /// `lcm` of the symmetrizer entries.
    pub fn folded_d(&self) -> i64 {
        self.symmetrizer.iter().copied().max().unwrap_or(1)
    }

    pub fn folded_adjacent(&self, k: usize, l: usize) -> bool {
        let e = (k.min(l), k.max(l));
        self.folded_edges.contains(&e)
    }

    /// Checks `a_{i^v j^v} = a_{ij}`.
    pub fn preserves(&self, datum: &CartanDatum) -> bool {
        let r = datum.rank();
        (1..=r).all(|i| (1..=r).all(|j| datum.entry(self.apply(i), self.apply(j)) == datum.entry(i, j)))
    }
}
