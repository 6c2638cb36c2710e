//! The digraph of a matrix: strong connectivity, period, and the
//! power-based primitivity test.

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::poly::gcd;

/// Dimension guard for [`is_primitive_by_power`].
pub const PRIMITIVITY_MAX_DIM: usize = 12;

/// A digraph on vertices `1..=n`. Arcs are stored 0-based internally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    succ: Vec<Vec<usize>>,
}

impl Digraph {
    /// Builds a digraph from 1-based arcs.
    pub fn new(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidMatrix("digraph needs at least one vertex".into()));
        }
        let mut succ = vec![Vec::new(); n];
        for &(i, j) in arcs {
            if i == 0 || j == 0 || i > n || j > n {
                return Err(Error::InvalidArc(i, j));
            }
            succ[i - 1].push(j - 1);
        }
        for s in &mut succ {
            s.sort_unstable();
            s.dedup();
        }
        Ok(Self { n, succ })
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    /// Arcs as sorted 1-based pairs.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(i, s)| s.iter().map(move |&j| (i + 1, j + 1)))
            .collect()
    }

    pub fn has_arc(&self, i: usize, j: usize) -> bool {
        i >= 1 && i <= self.n && self.succ[i - 1].binary_search(&(j - 1)).is_ok()
    }

    /// Strongly connected components (Tarjan), each a sorted list of 1-based vertices.
    pub fn strongly_connected_components(&self) -> Vec<Vec<usize>> {
        const UNSEEN: usize = usize::MAX;
        let n = self.n;
        let mut index = vec![UNSEEN; n];
        let mut low = vec![0; n];
        let mut on_stack = vec![false; n];
        let mut stack = Vec::new();
        let mut components = Vec::new();
        let mut next_index = 0;

        for root in 0..n {
            if index[root] != UNSEEN {
                continue;
            }
            // explicit call stack of (vertex, next successor position)
            let mut calls = vec![(root, 0usize)];
            index[root] = next_index;
            low[root] = next_index;
            next_index += 1;
            stack.push(root);
            on_stack[root] = true;

            while let Some(&(v, pos)) = calls.last() {
                if let Some(&w) = self.succ[v].get(pos) {
                    calls.last_mut().unwrap().1 += 1;
                    if index[w] == UNSEEN {
                        index[w] = next_index;
                        low[w] = next_index;
                        next_index += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        calls.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                    continue;
                }
                calls.pop();
                if let Some(&(parent, _)) = calls.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack holds the component");
                        on_stack[w] = false;
                        comp.push(w + 1);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    components.push(comp);
                }
            }
        }
        components
    }

    /// True iff there is exactly one strongly connected component.
    /// A single vertex counts as strongly connected to itself.
    pub fn is_strongly_connected(&self) -> bool {
        self.strongly_connected_components().len() == 1
    }

    /// gcd of all cycle lengths, from breadth-first levels; 0 when there is no cycle.
    pub fn period(&self) -> Result<usize> {
        if !self.is_strongly_connected() {
            return Err(Error::NotStronglyConnected);
        }
        let mut level = vec![usize::MAX; self.n];
        level[0] = 0;
        let mut queue = std::collections::VecDeque::from([0]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.succ[u] {
                if level[v] == usize::MAX {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        let mut g = 0;
        for (u, s) in self.succ.iter().enumerate() {
            for &v in s {
                g = gcd(g, (level[u] + 1).abs_diff(level[v]));
            }
        }
        Ok(g)
    }
}

/// Arc `(i, j)` iff `a_ij != 0`.
pub fn digraph_of(a: &DenseMatrix) -> Digraph {
    let n = a.dim();
    let succ = (0..n)
        .map(|i| (0..n).filter(|&j| a[(i, j)] != 0.0).collect())
        .collect();
    Digraph { n, succ }
}

pub fn is_irreducible(a: &DenseMatrix) -> bool {
    digraph_of(a).is_strongly_connected()
}

/// Zero pattern of a small square matrix, one bitset row per matrix row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoolMatrix {
    dim: usize,
    rows: Vec<u64>,
}

impl BoolMatrix {
    pub fn pattern_of(a: &DenseMatrix) -> Self {
        let dim = a.dim();
        assert!(dim <= 64, "bit pattern supports at most 64 columns");
        let rows = (0..dim)
            .map(|i| (0..dim).filter(|&j| a[(i, j)] != 0.0).fold(0u64, |r, j| r | (1 << j)))
            .collect();
        Self { dim, rows }
    }

    fn full_row(&self) -> u64 {
        if self.dim == 64 {
            u64::MAX
        } else {
            (1u64 << self.dim) - 1
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|&r| {
                (0..self.dim)
                    .filter(|&k| r & (1 << k) != 0)
                    .fold(0u64, |acc, k| acc | other.rows[k])
            })
            .collect();
        Self { dim: self.dim, rows }
    }

    pub fn pow(&self, k: u32) -> Self {
        assert!(k >= 1);
        let mut result: Option<Self> = None;
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.mul(&base),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result.unwrap()
    }

    pub fn is_all_true(&self) -> bool {
        let full = self.full_row();
        self.rows.iter().all(|&r| r == full)
    }
}

/// Wielandt's exponent bound `(n - 1)^2 + 1`.
pub fn wielandt_bound(n: usize) -> u32 {
    ((n - 1) * (n - 1) + 1) as u32
}

/// A nonnegative irreducible matrix is primitive iff its zero pattern raised to
/// the Wielandt bound is all-true.
pub fn is_primitive_by_power(a: &DenseMatrix) -> Result<bool> {
    let n = a.dim();
    if n > PRIMITIVITY_MAX_DIM {
        return Err(Error::DimensionGuard { dim: n, max: PRIMITIVITY_MAX_DIM });
    }
    if !a.is_nonnegative() {
        return Err(Error::NegativeEntry);
    }
    if !is_irreducible(a) {
        return Err(Error::Reducible);
    }
    Ok(BoolMatrix::pattern_of(a).pow(wielandt_bound(n)).is_all_true())
}
