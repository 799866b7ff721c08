//! Recovering the hole sequence of a family lattice from the inner products
//! of its minimal vectors alone.
//!
//! Inner products are normalised so that the minimum is 4. Two minimal
//! vectors are neighbours when their inner product is 2; the neighbours of
//! `v` are paired by `w -> v - w` and the pairs carry a parity graph.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::family::HoleSequence;
use crate::graph::{error_graph, SimpleGraph, VertexSet};
use crate::lattice::{lll_gram, IntVector, MinimalVectorSet};
use crate::matrix::{inverse_rational, to_rational};

/// Smallest dimension for which recovery is supported.
pub const MIN_DIMENSION: usize = 46;

/// `±` a representative of a [`MinimalVectorSet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedRep {
    pub index: usize,
    pub negated: bool,
}

impl SignedRep {
    fn sign(self) -> i64 {
        if self.negated {
            -1
        } else {
            1
        }
    }
}

enum Coords {
    Narrow { y: Vec<i16>, z: Vec<i16> },
    Wide { y: Vec<i64>, z: Vec<i64> },
}

/// Exact inner products between representatives, computed in machine
/// integers after LLL-reducing the basis.
pub struct InnerProducts {
    dim: usize,
    len: usize,
    /// Raw inner product of a minimal vector with itself.
    n0: i64,
    coords: Coords,
    /// Sign-normalised reduced coordinates to `(index, flipped)`.
    lookup: BTreeMap<Vec<i64>, (usize, bool)>,
}

fn normalize_sign(mut v: Vec<i64>) -> (Vec<i64>, bool) {
    let flip = v.iter().find(|&&c| c != 0).is_some_and(|&c| c < 0);
    if flip {
        for c in v.iter_mut() {
            *c = -*c;
        }
    }
    (v, flip)
}

fn dot_i16(a: &[i16], b: &[i16]) -> i32 {
    // Wrapping ops keep the loop vectorised when overflow checks are on; the
    // caller has bounded the true value.
    a.iter()
        .zip(b)
        .fold(0i32, |s, (&x, &y)| s.wrapping_add((x as i32).wrapping_mul(y as i32)))
}

fn dot_i64(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).fold(0i64, |s, (x, y)| s.wrapping_add(x.wrapping_mul(*y)))
}

fn too_large() -> Error {
    Error::InvalidInput("reduced coordinates exceed the 64-bit range".into())
}

impl InnerProducts {
    pub fn new(minset: &MinimalVectorSet) -> Result<Self> {
        let dim = minset.dim();
        let len = minset.len();
        if len == 0 {
            return Err(Error::Empty);
        }
        let (m, _) = minset.lattice_gram().scaled_integral();
        let lll = lll_gram(&m)?;
        let t_inv = inverse_rational(&to_rational(&lll.transform))
            .ok_or(Error::LinearlyDependent)?
            .map(|x| x.to_integer());
        let mut y: Vec<i64> = Vec::with_capacity(len * dim);
        for r in minset.representatives() {
            for c in t_inv.left_apply(r.coords()) {
                y.push(c.to_i64().ok_or_else(too_large)?);
            }
        }
        let g: Vec<i64> = lll
            .gram
            .iter_rows()
            .flatten()
            .map(|v| v.to_i64().ok_or_else(too_large))
            .collect::<Result<_>>()?;
        let max_y = y.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0) as u128;
        let max_g = g.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0) as u128;
        let d = dim as u128;
        // Every intermediate sum is bounded by these products.
        let max_z = max_y * max_g * d;
        let max_dot = max_z * max_y * d;
        if max_dot >= 1 << 62 {
            return Err(too_large());
        }
        let mut z = vec![0i64; len * dim];
        for i in 0..len {
            let yi = &y[i * dim..(i + 1) * dim];
            for (c, zc) in z[i * dim..(i + 1) * dim].iter_mut().enumerate() {
                *zc = (0..dim).map(|k| yi[k] * g[k * dim + c]).sum();
            }
        }
        let max_z = z.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0) as u128;
        let max_dot = max_z * max_y * d;
        let mut lookup = BTreeMap::new();
        for i in 0..len {
            let (key, flip) = normalize_sign(y[i * dim..(i + 1) * dim].to_vec());
            lookup.insert(key, (i, flip));
        }
        let coords = if max_dot < 1 << 30 && max_z < 1 << 15 {
            Coords::Narrow {
                y: y.iter().map(|&v| v as i16).collect(),
                z: z.iter().map(|&v| v as i16).collect(),
            }
        } else {
            Coords::Wide { y, z }
        };
        let mut ips = InnerProducts {
            dim,
            len,
            n0: 0,
            coords,
            lookup,
        };
        ips.n0 = ips.raw(0, 0);
        Ok(ips)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Whether the 16-bit kernel is in use.
    pub fn is_narrow(&self) -> bool {
        matches!(self.coords, Coords::Narrow { .. })
    }

    fn raw(&self, i: usize, j: usize) -> i64 {
        let r = |k: usize| k * self.dim..(k + 1) * self.dim;
        match &self.coords {
            Coords::Narrow { y, z } => dot_i16(&z[r(i)], &y[r(j)]) as i64,
            Coords::Wide { y, z } => dot_i64(&z[r(i)], &y[r(j)]),
        }
    }

    /// Inner product rescaled to minimum 4, if it is an integer.
    pub fn normalized(&self, i: usize, j: usize) -> Option<i64> {
        let x = 4 * self.raw(i, j);
        (x % self.n0 == 0).then(|| x / self.n0)
    }

    fn signed(&self, a: SignedRep, b: SignedRep) -> Option<i64> {
        self.normalized(a.index, b.index).map(|x| x * a.sign() * b.sign())
    }

    /// Neighbours of `+rep[i]`.
    pub fn neighbours(&self, i: usize) -> Vec<SignedRep> {
        let mut out = Vec::new();
        for j in 0..self.len {
            if j == i {
                continue;
            }
            let x = 2 * self.raw(i, j);
            if x == self.n0 {
                out.push(SignedRep { index: j, negated: false });
            } else if x == -self.n0 {
                out.push(SignedRep { index: j, negated: true });
            }
        }
        out
    }

    /// Neighbours of every `+rep[i]`, in one pass over all pairs.
    pub fn neighbour_lists(&self) -> Vec<Vec<SignedRep>> {
        let mut out: Vec<Vec<SignedRep>> = vec![Vec::new(); self.len];
        let n0 = self.n0;
        let mut record = |i: usize, j: usize, x: i64| {
            if 2 * x == n0 || 2 * x == -n0 {
                let negated = 2 * x == -n0;
                out[i].push(SignedRep { index: j, negated });
                out[j].push(SignedRep { index: i, negated });
            }
        };
        let dim = self.dim;
        match &self.coords {
            Coords::Narrow { y, z } => {
                for i in 0..self.len {
                    let zi = &z[i * dim..(i + 1) * dim];
                    for j in i + 1..self.len {
                        record(i, j, dot_i16(zi, &y[j * dim..(j + 1) * dim]) as i64);
                    }
                }
            }
            Coords::Wide { y, z } => {
                for i in 0..self.len {
                    let zi = &z[i * dim..(i + 1) * dim];
                    for j in i + 1..self.len {
                        record(i, j, dot_i64(zi, &y[j * dim..(j + 1) * dim]));
                    }
                }
            }
        }
        for l in out.iter_mut() {
            l.sort_unstable();
        }
        out
    }

    fn coords_of(&self, s: SignedRep) -> Vec<i64> {
        let r = s.index * self.dim..(s.index + 1) * self.dim;
        let v: Vec<i64> = match &self.coords {
            Coords::Narrow { y, .. } => y[r].iter().map(|&c| c as i64).collect(),
            Coords::Wide { y, .. } => y[r].to_vec(),
        };
        if s.negated {
            v.into_iter().map(|c| -c).collect()
        } else {
            v
        }
    }

    /// `+rep[center] - w` as a signed representative, if it is minimal.
    fn difference(&self, center: usize, w: SignedRep) -> Option<SignedRep> {
        let c = self.coords_of(SignedRep { index: center, negated: false });
        let diff: Vec<i64> = c.iter().zip(self.coords_of(w)).map(|(a, b)| a - b).collect();
        let (key, flip) = normalize_sign(diff);
        self.lookup.get(&key).map(|&(index, f)| SignedRep {
            index,
            negated: flip != f,
        })
    }
}

/// The neighbours of a minimal vector modulo `w -> v - w`, with the graph of
/// even inner products between classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighbourQuotient {
    pub center: usize,
    /// Each class as `(w, v - w)` with `w` the smaller of the two.
    pub classes: Vec<(SignedRep, SignedRep)>,
    pub parity_graph: SimpleGraph,
}

/// The three kinds of quotient classes of a quadruple vector, named after the
/// pattern in which a neighbour meets its support.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SupportClassLabel {
    Aabb,
    Abab,
    Abba,
}

fn not_in_family(msg: &str) -> Error {
    Error::NotInFamily(String::from(msg))
}

/// Builds the quotient at `+rep[center]` from its neighbour list.
pub fn quotient_from(ips: &InnerProducts, center: usize, nbrs: &[SignedRep]) -> Result<NeighbourQuotient> {
    let mut classes = Vec::with_capacity(nbrs.len() / 2);
    let mut seen = BTreeMap::new();
    for &w in nbrs {
        if seen.contains_key(&w) {
            continue;
        }
        let p = ips
            .difference(center, w)
            .ok_or_else(|| not_in_family("neighbour without partner"))?;
        if nbrs.binary_search(&p).is_err() || p == w {
            return Err(not_in_family("partner is not a neighbour"));
        }
        seen.insert(w, ());
        seen.insert(p, ());
        classes.push((w.min(p), w.max(p)));
    }
    classes.sort_unstable();
    let n = classes.len();
    let mut g = SimpleGraph::new(n);
    for a in 0..n {
        for b in a + 1..n {
            let x = ips
                .signed(classes[a].0, classes[b].0)
                .ok_or_else(|| not_in_family("inner products are not integral at minimum 4"))?;
            if x % 2 == 0 {
                g.add_edge(a, b);
            }
        }
    }
    Ok(NeighbourQuotient {
        center,
        classes,
        parity_graph: g,
    })
}

/// Quotient at the representative equal to `±v` (coordinates in the basis of
/// `minset`).
pub fn neighbour_quotient(minset: &MinimalVectorSet, v: &IntVector) -> Result<NeighbourQuotient> {
    let i = locate(minset, v)?;
    let ips = InnerProducts::new(minset)?;
    let nbrs = ips.neighbours(i);
    quotient_from(&ips, i, &nbrs)
}

fn locate(minset: &MinimalVectorSet, v: &IntVector) -> Result<usize> {
    minset
        .index_of(v)
        .ok_or_else(|| Error::InvalidInput("vector is not minimal".into()))
}

/// Disjoint vertex subsets found by the quasi-equivalence search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiEqPartition {
    pub alpha: BigRational,
    pub classes: Vec<Vec<usize>>,
}

/// Checks both defining inequalities of an `alpha`-quasi-equivalence class.
pub fn is_quasi_equivalence_class(g: &SimpleGraph, alpha: &BigRational, class: &[usize]) -> bool {
    if class.is_empty() {
        return false;
    }
    let n = g.vertex_count();
    let c = VertexSet::from_slice(n, class);
    let size = BigInt::from(c.len());
    let (p, q) = (alpha.numer(), alpha.denom());
    let inside_bound = p * &size;
    let outside_bound = (q - BigInt::from(3) * p) * &size;
    (0..n).all(|v| {
        if c.contains(v) {
            BigInt::from(g.closed_neighbourhood(v).symmetric_difference_len(&c)) * q <= inside_bound
        } else {
            BigInt::from(g.neighbours(v).intersection_len(&c)) * q < outside_bound
        }
    })
}

/// All `alpha`-quasi-equivalence classes of size at least `min_size`, by
/// majority refinement from closed neighbourhoods of seeds taken in order of
/// decreasing degree, each candidate verified exactly. Returns no classes
/// when `alpha` lies outside `[0, 1/3)`.
pub fn quasi_equivalence_classes(g: &SimpleGraph, alpha: &BigRational, min_size: usize) -> QuasiEqPartition {
    let mut out = QuasiEqPartition {
        alpha: alpha.clone(),
        classes: Vec::new(),
    };
    if alpha.is_negative() || alpha * BigInt::from(3) >= BigRational::from_integer(1.into()) {
        return out;
    }
    let n = g.vertex_count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (core::cmp::Reverse(g.degree(v)), v));
    let closed: Vec<VertexSet> = (0..n).map(|v| g.closed_neighbourhood(v)).collect();
    let mut covered = VertexSet::new(n);
    for s in order {
        if covered.contains(s) {
            continue;
        }
        let mut x = closed[s].clone();
        for _ in 0..=n {
            let mut next = VertexSet::new(n);
            let size = x.len();
            for u in 0..n {
                if 2 * closed[u].intersection_len(&x) > size {
                    next.insert(u);
                }
            }
            if next == x {
                break;
            }
            x = next;
        }
        let cand = x.to_vec();
        if cand.len() >= min_size.max(1)
            && x.is_disjoint(&covered)
            && is_quasi_equivalence_class(g, alpha, &cand)
        {
            covered.union_with(&x);
            out.classes.push(cand);
        }
    }
    out.classes.sort();
    out
}

/// `ceil((2d - 7) / 3)`, the class size threshold.
pub fn class_threshold(d: usize) -> usize {
    (2 * d).saturating_sub(7).div_ceil(3)
}

/// Everything established while checking one candidate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleWitness {
    pub center: usize,
    pub class_a: Vec<usize>,
    pub class_b: Vec<usize>,
    pub error_edges: usize,
    /// Labels of the path vertices after inserting midpoints.
    pub path_labels: Vec<u64>,
    pub holes: HoleSequence,
}

fn has_internal_error(g: &SimpleGraph, class: &[usize]) -> bool {
    class
        .iter()
        .enumerate()
        .any(|(i, &a)| class[i + 1..].iter().any(|&b| !g.has_edge(a, b)))
}

/// Conditions (3) and (4) for a fixed choice of which class plays `A`.
fn path_holes(q: &NeighbourQuotient, d: usize, a: &[usize], b: &[usize]) -> Option<(usize, Vec<u64>, HoleSequence)> {
    let g = &q.parity_graph;
    let n = g.vertex_count();
    let mut part = vec![0usize; n];
    for &v in b {
        part[v] = 1;
    }
    let e = error_graph(g, &part);
    let in_a = VertexSet::from_slice(n, a);
    let tri: Vec<usize> = b
        .iter()
        .copied()
        .filter(|&v| {
            let na: Vec<usize> = e.neighbours(v).iter().filter(|&w| in_a.contains(w)).collect();
            na.iter()
                .enumerate()
                .any(|(i, &x)| na[i + 1..].iter().any(|&y| e.has_edge(x, y)))
        })
        .collect();
    if tri.is_empty() {
        return None;
    }
    let removed = VertexSet::from_slice(n, &tri);
    let keep: Vec<usize> = (0..n).filter(|&v| in_a.contains(v) || !removed.contains(v)).collect();
    let sub = e.induced(&keep);
    let leaves = sub.leaves();
    if leaves.len() != 2 {
        return None;
    }
    let is_a = |i: usize| in_a.contains(keep[i]);
    let start = match (is_a(leaves[0]), is_a(leaves[1])) {
        (true, false) => leaves[0],
        (false, true) => leaves[1],
        _ => return None,
    };
    let order = sub.path_from(start)?;
    let mut labels = Vec::with_capacity(2 * order.len());
    let mut holes = Vec::new();
    let mut label = 5u64;
    let mut prev_h = false;
    for &i in &order {
        if is_a(i) {
            prev_h = false;
        } else {
            if prev_h {
                return None;
            }
            prev_h = true;
            // Midpoint of the edge arriving from A.
            labels.push(label);
            label += 1;
            holes.push(label);
        }
        labels.push(label);
        label += 1;
    }
    let want = (2 * d).checked_sub(6 + q.classes.len() / 2)?;
    if labels.len() != want {
        return None;
    }
    let holes = HoleSequence::new(holes).ok()?;
    holes.satisfies_auto(d).then_some((e.edge_count(), labels, holes))
}

/// Evaluates the four admissibility conditions in order.
pub fn admissible_witness(q: &NeighbourQuotient, d: usize) -> Option<AdmissibleWitness> {
    let nbar = q.classes.len();
    let m = class_threshold(d);
    if nbar % 2 != 0 || nbar < 2 * m {
        return None;
    }
    let alpha = BigRational::new(2.into(), 7.into());
    let parts = quasi_equivalence_classes(&q.parity_graph, &alpha, m);
    let [c0, c1] = parts.classes.as_slice() else {
        return None;
    };
    if c0.len() != c1.len() || c0.len() + c1.len() != nbar {
        return None;
    }
    let g = &q.parity_graph;
    if !has_internal_error(g, c0) || !has_internal_error(g, c1) {
        return None;
    }
    let found: Vec<AdmissibleWitness> = [(c0, c1), (c1, c0)]
        .into_iter()
        .filter_map(|(a, b)| {
            path_holes(q, d, a, b).map(|(error_edges, path_labels, holes)| AdmissibleWitness {
                center: q.center,
                class_a: a.clone(),
                class_b: b.clone(),
                error_edges,
                path_labels,
                holes,
            })
        })
        .collect();
    match found.as_slice() {
        [w] => Some(w.clone()),
        _ => None,
    }
}

/// Whether `±v` (coordinates in the basis of `minset`) is admissible.
pub fn is_admissible(minset: &MinimalVectorSet, v: &IntVector) -> Result<bool> {
    let q = match neighbour_quotient(minset, v) {
        Ok(q) => q,
        Err(Error::NotInFamily(_)) => return Ok(false),
        Err(e) => return Err(e),
    };
    Ok(admissible_witness(&q, minset.dim()).is_some())
}

/// Summary of a recovery run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecoveryReport {
    /// Representatives passing the size filter and examined in full.
    pub candidates: usize,
    pub admissible_index: usize,
    pub class_sizes: (usize, usize),
    pub error_edges: usize,
    pub path_labels: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecoveredStructure {
    pub d: usize,
    pub holes: HoleSequence,
    /// One of the two admissible minimal vectors, in the input coordinates.
    pub admissible_pair: IntVector,
    pub report: RecoveryReport,
}

/// Finds the unique admissible pair and reads the holes off its path.
pub fn recover_holes(minset: &MinimalVectorSet) -> Result<RecoveredStructure> {
    let d = minset.dim();
    if d < MIN_DIMENSION {
        return Err(Error::NotInFamily(format!("dimension {d} is below {MIN_DIMENSION}")));
    }
    if minset.minimum().is_zero() {
        return Err(Error::InvalidInput("zero minimum".into()));
    }
    let ips = InnerProducts::new(minset)?;
    let lists = ips.neighbour_lists();
    let m = class_threshold(d);
    let mut cands: Vec<usize> = (0..lists.len())
        .filter(|&i| {
            let l = lists[i].len();
            l % 4 == 0 && l / 2 >= 2 * m
        })
        .collect();
    cands.sort_by_key(|&i| (core::cmp::Reverse(lists[i].len()), i));
    let mut found = Vec::new();
    for &i in &cands {
        let Ok(q) = quotient_from(&ips, i, &lists[i]) else {
            continue;
        };
        if let Some(w) = admissible_witness(&q, d) {
            found.push(w);
        }
    }
    match found.len() {
        1 => {
            let w = found.pop().expect("one witness");
            Ok(RecoveredStructure {
                d,
                holes: w.holes.clone(),
                admissible_pair: minset.representatives()[w.center].clone(),
                report: RecoveryReport {
                    candidates: cands.len(),
                    admissible_index: w.center,
                    class_sizes: (w.class_a.len(), w.class_b.len()),
                    error_edges: w.error_edges,
                    path_labels: w.path_labels,
                },
            })
        }
        0 => Err(not_in_family("no admissible minimal vector")),
        k => Err(Error::NotInFamily(format!("{k} admissible pairs"))),
    }
}
