//! Enumeration of perfect lattices of small dimension up to similarity.
//!
//! Every perfect lattice `Λ` of dimension `d` has `d` independent minimal
//! vectors spanning a sublattice of maximal index `I <= I_d`; taking them as
//! the standard basis puts `Λ` among the overlattices of `Z^d` of index at
//! most `I_d`, and all its minimal vectors inside the cube `[-1,1]^d`. The
//! search picks `d(d-1)/2` further cube points whose squares complete the
//! basis squares to a basis of symmetric tensors, solves `q(v) = 1` on all of
//! them, and keeps positive definite forms of minimum `1`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::arith::det_i128;
use crate::bounds::best_known;
use crate::error::{Error, Result};
use crate::geometry::{cartan_gram, RootType};
use crate::isometry::similar;
use crate::lattice::{minimal_vectors_general, GramMatrix};
use crate::matrix::{inverse_rational, Matrix};
use crate::overlattice::{overlattices, Overlattice};
use crate::perfection::symmetric_rank;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationOptions {
    /// Required for `d = 4`.
    pub long: bool,
    /// Largest overlattice index; defaults to the best known `I_d`.
    pub max_index: Option<u64>,
    /// Restrict to orbit representatives under signed permutations.
    pub symmetry: bool,
    /// Reject choices where the midpoint of two chosen vectors is a lattice point.
    pub hull_pruning: bool,
    /// Require all square minors of the coordinate matrix to lie in `[-1,1]`.
    /// Only systems of maximal index survive, and every class has one.
    pub minor_pruning: bool,
    /// Search nodes allowed before giving up with a partial result.
    pub node_budget: u64,
    /// Node budget for each similarity test during deduplication.
    pub isometry_budget: u64,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            long: false,
            max_index: None,
            symmetry: true,
            hull_pruning: true,
            minor_pruning: true,
            node_budget: 1 << 40,
            isometry_budget: 10_000_000,
        }
    }
}

/// How a record was first reached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub overlattice: Overlattice,
    /// The chosen cube points, as numerators over `overlattice.denominator`.
    pub vectors: Vec<Vec<i64>>,
    /// The solved form on the standard basis `e_1..e_d`.
    pub form: GramMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerfectLatticeRecord {
    pub dim: usize,
    /// Gram matrix of a basis of the lattice, primitive integral.
    pub gram: Matrix<BigInt>,
    pub determinant: BigInt,
    /// `|Λ_min| / 2`.
    pub kissing: usize,
    pub rank2: usize,
    pub label: Option<String>,
    /// The first witness found in each overlattice index, keyed by index.
    pub witnesses: BTreeMap<u64, Witness>,
}

impl PerfectLatticeRecord {
    /// Indices of all overlattices in which the class was found.
    pub fn overlattice_indices(&self) -> BTreeSet<u64> {
        self.witnesses.keys().copied().collect()
    }

    /// The witness from the largest index.
    pub fn witness(&self) -> &Witness {
        self.witnesses.values().next_back().expect("records carry a witness")
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub leaves: u64,
    pub not_positive_definite: u64,
    pub short_cube_point: u64,
    pub minimum_below_one: u64,
    pub hits: u64,
}

impl SearchStats {
    fn add(&mut self, o: &SearchStats) {
        self.nodes += o.nodes;
        self.leaves += o.leaves;
        self.not_positive_definite += o.not_positive_definite;
        self.short_cube_point += o.short_cube_point;
        self.minimum_below_one += o.minimum_below_one;
        self.hits += o.hits;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    pub dim: usize,
    pub records: Vec<PerfectLatticeRecord>,
    /// False when the node budget ran out; records are then a lower bound.
    pub complete: bool,
    pub stats: SearchStats,
    pub overlattices_searched: usize,
}

/// One overlattice with its candidate cube points.
#[derive(Clone, Debug)]
pub struct PreparedLattice {
    pub overlattice: Overlattice,
    /// Sign normalized cube points other than `0, ±e_i`, numerators over `n`.
    pub candidates: Vec<Vec<i64>>,
    /// Candidates allowed as the first extra vector.
    first_allowed: Vec<bool>,
    /// `bad[a][b]`: a midpoint of `±a, ±b` is a nonzero lattice point. Indices
    /// `0..d` are the `e_i`, then the candidates.
    bad: Vec<Vec<bool>>,
    n: i64,
}

/// Work item: one overlattice and the first extra vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Task {
    pub lattice: usize,
    pub first: usize,
}

/// A form found by a task, before deduplication.
#[derive(Clone, Debug)]
pub struct Hit {
    pub task: Task,
    pub vectors: Vec<Vec<i64>>,
    pub form: GramMatrix,
    pub lattice_gram: GramMatrix,
    pub kissing: usize,
    pub rank2: usize,
}

#[derive(Clone, Debug, Default)]
pub struct TaskResult {
    pub hits: Vec<Hit>,
    pub stats: SearchStats,
    pub exhausted: bool,
}

/// The precomputed search space for one dimension.
#[derive(Clone, Debug)]
pub struct Prepared {
    pub dim: usize,
    pub lattices: Vec<PreparedLattice>,
    pub options: EnumerationOptions,
}

pub const MAX_DIM: usize = 4;

fn signed_permutations(d: usize) -> Vec<(Vec<usize>, Vec<i64>)> {
    let mut perms = Vec::new();
    let mut p: Vec<usize> = (0..d).collect();
    permute(&mut p, 0, &mut perms);
    let mut out = Vec::new();
    for p in perms {
        for mask in 0u32..(1 << d) {
            let s = (0..d).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
            out.push((p.clone(), s));
        }
    }
    out
}

fn permute(p: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == p.len() {
        out.push(p.clone());
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, out);
        p.swap(k, i);
    }
}

/// `x -> y` with `y[perm[i]] = sign[i] x[i]`.
fn apply<T: Clone + core::ops::Neg<Output = T>>(g: &(Vec<usize>, Vec<i64>), x: &[T]) -> Vec<T> {
    let mut y = x.to_vec();
    for (i, xi) in x.iter().enumerate() {
        y[g.0[i]] = if g.1[i] < 0 { -xi.clone() } else { xi.clone() };
    }
    y
}

fn image(o: &Overlattice, g: &(Vec<usize>, Vec<i64>)) -> Overlattice {
    let rows: Vec<Vec<BigRational>> = o.basis().to_rows().iter().map(|r| apply(g, r)).collect();
    Overlattice::from_basis(&Matrix::from_rows(rows).expect("square"), o.index)
}

fn sign_normalize(v: &mut [i64]) {
    if v.iter().find(|&&c| c != 0).is_some_and(|&c| c < 0) {
        v.iter_mut().for_each(|c| *c = -*c);
    }
}

fn membership(o: &Overlattice) -> impl Fn(&[BigRational]) -> bool {
    let inv = inverse_rational(&o.basis()).expect("basis");
    move |x: &[BigRational]| inv.left_apply(x).iter().all(|c| c.is_integer())
}

impl PreparedLattice {
    fn new(o: Overlattice, stabilizer: &[(Vec<usize>, Vec<i64>)]) -> Self {
        let d = o.dim();
        let n = o.denominator.to_i64().expect("small denominator");
        let nums: Vec<Vec<i64>> = o
            .numerators
            .iter_rows()
            .map(|r| r.iter().map(|x| x.mod_floor(&o.denominator).to_i64().expect("small")).collect())
            .collect();
        // Coset representatives of Λ / Z^d with entries in [0, n).
        let mut cosets: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut stack = vec![vec![0i64; d]];
        while let Some(c) = stack.pop() {
            if !cosets.insert(c.clone()) {
                continue;
            }
            for r in &nums {
                stack.push(c.iter().zip(r).map(|(a, b)| (a + b).rem_euclid(n)).collect());
            }
        }
        let mut cand: BTreeSet<Vec<i64>> = BTreeSet::new();
        for r in &cosets {
            let choices: Vec<Vec<i64>> = r
                .iter()
                .map(|&x| if x == 0 { vec![-n, 0, n] } else { vec![x - n, x] })
                .collect();
            let mut idx = vec![0usize; d];
            loop {
                let mut v: Vec<i64> = (0..d).map(|j| choices[j][idx[j]]).collect();
                let nonzero = v.iter().filter(|&&c| c != 0).count();
                let unit = nonzero == 1 && v.iter().any(|&c| c.abs() == n);
                if nonzero > 0 && !unit {
                    sign_normalize(&mut v);
                    cand.insert(v);
                }
                let mut k = d;
                let mut moved = false;
                while k > 0 {
                    k -= 1;
                    if idx[k] + 1 < choices[k].len() {
                        idx[k] += 1;
                        moved = true;
                        break;
                    }
                    idx[k] = 0;
                }
                if !moved {
                    break;
                }
            }
        }
        let candidates: Vec<Vec<i64>> = cand.into_iter().collect();
        let first_allowed = candidates
            .iter()
            .map(|c| {
                stabilizer.iter().all(|g| {
                    let mut y = apply(g, c);
                    sign_normalize(&mut y);
                    y >= *c
                })
            })
            .collect();
        let member = membership(&o);
        let mut all: Vec<Vec<i64>> = (0..d)
            .map(|i| {
                let mut e = vec![0; d];
                e[i] = n;
                e
            })
            .collect();
        all.extend(candidates.iter().cloned());
        let two_n = BigInt::from(2 * n);
        let half = |x: &[i64], y: &[i64], s: i64| -> Vec<BigRational> {
            x.iter()
                .zip(y)
                .map(|(a, b)| BigRational::new(BigInt::from(a + s * b), two_n.clone()))
                .collect()
        };
        let bad = all
            .iter()
            .map(|a| {
                all.iter()
                    .map(|b| a != b && (member(&half(a, b, 1)) || member(&half(a, b, -1))))
                    .collect()
            })
            .collect();
        PreparedLattice {
            overlattice: o,
            candidates,
            first_allowed,
            bad,
            n,
        }
    }
}

/// Builds the overlattice list and candidate sets.
pub fn prepare(d: usize, options: &EnumerationOptions) -> Result<Prepared> {
    if !(2..=MAX_DIM).contains(&d) {
        return Err(Error::DimensionLimit { d, max: MAX_DIM });
    }
    if d == 4 && !options.long {
        return Err(Error::InvalidInput("d = 4 needs the long-running option".into()));
    }
    let max_index = match options.max_index {
        Some(m) => m,
        None => best_known(d).and_then(|v| v.to_u64()).ok_or(Error::UnknownId(d))?,
    };
    let group = signed_permutations(d);
    let mut lattices = Vec::new();
    for o in overlattices(d, max_index)? {
        let stabilizer: Vec<(Vec<usize>, Vec<i64>)> = if options.symmetry {
            let mut stab = Vec::new();
            let mut minimal = true;
            for g in &group {
                let im = image(&o, g);
                if im < o {
                    minimal = false;
                    break;
                }
                if im == o {
                    stab.push(g.clone());
                }
            }
            if !minimal {
                continue;
            }
            stab
        } else {
            Vec::new()
        };
        lattices.push(PreparedLattice::new(o, &stabilizer));
    }
    Ok(Prepared {
        dim: d,
        lattices,
        options: options.clone(),
    })
}

/// Incremental rank of the off-diagonal products `x_i x_j` (`i < j`), in
/// 128-bit integers with gcd normalization.
#[derive(Clone, Debug, Default)]
struct OffDiagonalRank {
    rows: Vec<(usize, Vec<i128>)>,
}

impl OffDiagonalRank {
    fn push(&mut self, x: &[i64]) -> bool {
        let d = x.len();
        let mut r: Vec<i128> = Vec::with_capacity(d * (d - 1) / 2);
        for i in 0..d {
            for j in i + 1..d {
                r.push(x[i] as i128 * x[j] as i128);
            }
        }
        for (p, row) in &self.rows {
            if r[*p] == 0 {
                continue;
            }
            let (a, b) = (row[*p], r[*p]);
            for (x, y) in r.iter_mut().zip(row) {
                *x = *x * a - b * y;
            }
            let g = r.iter().fold(0i128, |g, &x| g.gcd(&x));
            if g > 1 {
                r.iter_mut().for_each(|x| *x /= g);
            }
        }
        match r.iter().position(|&x| x != 0) {
            Some(p) => {
                self.rows.push((p, r));
                true
            }
            None => false,
        }
    }

    fn pop(&mut self) {
        self.rows.pop();
    }
}

struct Search<'a> {
    pl: &'a PreparedLattice,
    d: usize,
    need: usize,
    options: &'a EnumerationOptions,
    counter: &'a AtomicU64,
    chosen: Vec<usize>,
    rank: OffDiagonalRank,
    result: TaskResult,
    task: Task,
}

impl Prepared {
    /// Work items in a fixed order.
    pub fn tasks(&self) -> Vec<Task> {
        let mut out = Vec::new();
        for (li, pl) in self.lattices.iter().enumerate() {
            for (first, &ok) in pl.first_allowed.iter().enumerate() {
                if ok || !self.options.symmetry {
                    out.push(Task { lattice: li, first });
                }
            }
        }
        out
    }

    /// Runs one task; `counter` is shared by all tasks for the node budget.
    pub fn run_task(&self, task: Task, counter: &AtomicU64) -> TaskResult {
        let pl = &self.lattices[task.lattice];
        let d = self.dim;
        let mut s = Search {
            pl,
            d,
            need: d * (d - 1) / 2,
            options: &self.options,
            counter,
            chosen: Vec::new(),
            rank: OffDiagonalRank::default(),
            result: TaskResult::default(),
            task,
        };
        s.extend(task.first);
        s.result
    }
}

impl Search<'_> {
    /// Tries candidate `c` as the next vector and recurses.
    fn extend(&mut self, c: usize) -> bool {
        self.result.stats.nodes += 1;
        if self.counter.fetch_add(1, Ordering::Relaxed) >= self.options.node_budget {
            self.result.exhausted = true;
            return false;
        }
        let x = &self.pl.candidates[c];
        if self.options.hull_pruning {
            let d = self.d;
            let me = d + c;
            if (0..d).any(|i| self.pl.bad[me][i]) || self.chosen.iter().any(|&o| self.pl.bad[me][d + o]) {
                return true;
            }
        }
        if self.options.minor_pruning && !self.minors_ok(x) {
            return true;
        }
        if !self.rank.push(x) {
            return true;
        }
        self.chosen.push(c);
        let mut go_on = true;
        if self.chosen.len() == self.need {
            self.leaf();
        } else {
            let left = self.need - self.chosen.len();
            let total = self.pl.candidates.len();
            for next in c + 1..total {
                if total - next < left {
                    break;
                }
                if !self.extend(next) {
                    go_on = false;
                    break;
                }
            }
        }
        self.chosen.pop();
        self.rank.pop();
        go_on
    }

    /// All square minors through the new row `x` stay within `[-1, 1]`
    /// (in units of `n^k` for `k x k` minors of the numerator matrix).
    fn minors_ok(&self, x: &[i64]) -> bool {
        let d = self.d;
        let n = self.pl.n as i128;
        let mut rows: Vec<Vec<i64>> = (0..d)
            .map(|i| {
                let mut e = vec![0; d];
                e[i] = self.pl.n;
                e
            })
            .collect();
        rows.extend(self.chosen.iter().map(|&c| self.pl.candidates[c].clone()));
        for k in 2..=d {
            let bound = n.pow(k as u32);
            let mut rsel: Vec<usize> = (0..k - 1).collect();
            if rows.len() < k - 1 {
                break;
            }
            loop {
                let mut csel: Vec<usize> = (0..k).collect();
                loop {
                    let mut m: Vec<Vec<i128>> = rsel
                        .iter()
                        .map(|&r| csel.iter().map(|&j| rows[r][j] as i128).collect())
                        .collect();
                    m.push(csel.iter().map(|&j| x[j] as i128).collect());
                    if det_i128(m).abs() > bound {
                        return false;
                    }
                    if !next_comb(&mut csel, d) {
                        break;
                    }
                }
                if k == 1 || !next_comb(&mut rsel, rows.len()) {
                    break;
                }
            }
        }
        true
    }

    fn leaf(&mut self) {
        self.result.stats.leaves += 1;
        let d = self.d;
        let n = self.pl.n as i128;
        let vs: Vec<&Vec<i64>> = self.chosen.iter().map(|&c| &self.pl.candidates[c]).collect();
        // Unknowns g_ij (i < j); q(x) = n^2 with g_ii = 1.
        let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect();
        let a: Vec<Vec<i128>> = vs
            .iter()
            .map(|x| pairs.iter().map(|&(i, j)| 2 * x[i] as i128 * x[j] as i128).collect())
            .collect();
        let b: Vec<i128> = vs
            .iter()
            .map(|x| n * n - x.iter().map(|&c| c as i128 * c as i128).sum::<i128>())
            .collect();
        let mut det = det_i128(a.clone());
        debug_assert!(det != 0);
        let mut num: Vec<i128> = (0..pairs.len())
            .map(|k| {
                let mut m = a.clone();
                for (row, bv) in m.iter_mut().zip(&b) {
                    row[k] = *bv;
                }
                det_i128(m)
            })
            .collect();
        if det < 0 {
            det = -det;
            num.iter_mut().for_each(|v| *v = -*v);
        }
        // Smallest common denominator, keeping the entries of det * G small.
        let l = num.iter().fold(det, |acc, &v| acc.gcd(&v));
        det /= l;
        num.iter_mut().for_each(|v| *v /= l);
        // Integer form det * G.
        let mut g = vec![vec![0i128; d]; d];
        for (i, row) in g.iter_mut().enumerate() {
            row[i] = det;
        }
        for (k, &(i, j)) in pairs.iter().enumerate() {
            g[i][j] = num[k];
            g[j][i] = num[k];
        }
        let pd = (1..=d).all(|k| det_i128(g[..k].iter().map(|r| r[..k].to_vec()).collect()) > 0);
        if !pd {
            self.result.stats.not_positive_definite += 1;
            return;
        }
        let target = det * n * n;
        let q = |x: &[i64]| -> i128 {
            (0..d)
                .map(|i| (0..d).map(|j| x[i] as i128 * g[i][j] * x[j] as i128).sum::<i128>())
                .sum()
        };
        if self.pl.candidates.iter().any(|x| q(x) < target) {
            self.result.stats.short_cube_point += 1;
            return;
        }
        let den = BigInt::from(det);
        let form = GramMatrix::new(Matrix::from_fn(d, d, |i, j| BigRational::new(BigInt::from(g[i][j]), den.clone())))
            .expect("symmetric");
        let basis = self.pl.overlattice.basis();
        let lattice_gram = GramMatrix::new(
            basis
                .mul(form.entries())
                .and_then(|m| m.mul(&basis.transpose()))
                .expect("square"),
        )
        .expect("symmetric");
        let mv = minimal_vectors_general(&lattice_gram).expect("positive definite");
        if !mv.minimum().is_one() {
            self.result.stats.minimum_below_one += 1;
            return;
        }
        self.result.stats.hits += 1;
        let rank2 = symmetric_rank(mv.representatives()).expect("nonempty");
        self.result.hits.push(Hit {
            task: self.task,
            vectors: vs.into_iter().cloned().collect(),
            form,
            lattice_gram,
            kissing: mv.len(),
            rank2,
        });
    }
}

fn next_comb(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// The root lattice name of `gram` if it is similar to `A_d` or `D_d`.
pub fn root_label(gram: &GramMatrix, budget: u64) -> Result<Option<String>> {
    let d = gram.dim();
    let mut types = vec![RootType::A];
    if d >= 4 {
        types.push(RootType::D);
    }
    for t in types {
        if similar(gram, &cartan_gram(t, d)?, budget)?.is_some() {
            return Ok(Some(format!("{t}{d}")));
        }
    }
    Ok(None)
}

/// Deduplicates hits up to similarity and sorts the records by determinant
/// and Gram entries. The result does not depend on the order of `results`.
pub fn merge(prepared: &Prepared, results: Vec<TaskResult>) -> Result<Enumeration> {
    let mut stats = SearchStats::default();
    let mut complete = true;
    let mut hits = Vec::new();
    for r in results {
        stats.add(&r.stats);
        complete &= !r.exhausted;
        hits.extend(r.hits);
    }
    hits.sort_by(|a, b| a.task.cmp(&b.task).then_with(|| a.vectors.cmp(&b.vectors)));
    let budget = prepared.options.isometry_budget;
    let mut records: Vec<PerfectLatticeRecord> = Vec::new();
    let mut by_key: BTreeMap<(BigInt, usize), Vec<usize>> = BTreeMap::new();
    for h in hits {
        let prim = h.lattice_gram.primitive_integral();
        let pg = GramMatrix::from_integers(&prim)?;
        let det = pg.determinant().to_integer();
        let index = prepared.lattices[h.task.lattice].overlattice.index;
        let bucket = by_key.entry((det.clone(), h.kissing)).or_default();
        let mut found = None;
        for &r in bucket.iter() {
            let other = GramMatrix::from_integers(&records[r].gram)?;
            if similar(&pg, &other, budget)?.is_some() {
                found = Some(r);
                break;
            }
        }
        let witness = Witness {
            overlattice: prepared.lattices[h.task.lattice].overlattice.clone(),
            vectors: h.vectors,
            form: h.form,
        };
        match found {
            Some(r) => {
                records[r].witnesses.entry(index).or_insert(witness);
            }
            None => {
                bucket.push(records.len());
                records.push(PerfectLatticeRecord {
                    dim: prepared.dim,
                    gram: prim,
                    determinant: det,
                    kissing: h.kissing,
                    rank2: h.rank2,
                    label: root_label(&pg, budget)?,
                    witnesses: BTreeMap::from([(index, witness)]),
                });
            }
        }
    }
    records.sort_by(|a, b| {
        a.determinant
            .cmp(&b.determinant)
            .then_with(|| sorted_entries(&a.gram).cmp(&sorted_entries(&b.gram)))
    });
    Ok(Enumeration {
        dim: prepared.dim,
        records,
        complete,
        stats,
        overlattices_searched: prepared.lattices.len(),
    })
}

fn sorted_entries(m: &Matrix<BigInt>) -> Vec<BigInt> {
    let mut v: Vec<BigInt> = m.iter_rows().flatten().cloned().collect();
    v.sort();
    v
}

/// Serial enumeration of all perfect lattices of dimension `d` up to
/// similarity.
pub fn enumerate_perfect(d: usize, options: &EnumerationOptions) -> Result<Enumeration> {
    let prepared = prepare(d, options)?;
    let counter = AtomicU64::new(0);
    let mut results = Vec::new();
    for t in prepared.tasks() {
        let r = prepared.run_task(t, &counter);
        let stop = r.exhausted;
        results.push(r);
        if stop {
            break;
        }
    }
    merge(&prepared, results)
}
