//! One function per subcommand, each producing a table.

use std::collections::BTreeMap;
use std::sync::atomic::AtomicU64;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use perflat::bounds::{
    best_available_id, blichfeldt, best_known, hermite, hollow_upper, minkowski, perfect_count_upper,
    polytope_count_upper, IdChoice, Log2Interval,
};
use perflat::counting::{alpha, alpha_asymptotic_check, family_count, sigma};
use perflat::enumerate::{merge, prepare, EnumerationOptions, TaskResult};
use perflat::family::{construct_ld, essential_partner, support, table9_entries, HoleSequence};
use perflat::geometry::{
    hollow_systems, hull_vertices, interior_lattice_points, max_root_index_exhaustive, positive_roots,
    root_lattice_extremes, small_height_basis, RootType, SymmetricGeneratorSet, ROOT_SEARCH_MAX_DIM,
};
use perflat::lattice::{minimal_vectors_general, short_vectors, GramMatrix, IntVector, LatticeBasis};
use perflat::matrix::{det_int, rank_int, Matrix};
use perflat::perfection::{ld_invariants, symmetric_rank, tensor_width};
use perflat::reconstruct::recover_holes;
use perflat::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::args::{BoundsArgs, Cli, Command, CountArgs, EnumerateArgs, FamilyArgs, GeometryCommand, IdArg, RootArg};
use crate::error::{CliError, Result};
use crate::gramfile::{read_gram, write_gram};
use crate::output::{Cell, Table};
use crate::scramble::scramble_gram;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Done,
    /// The table is printed but the answer is partial or undecided.
    Undecided(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub table: Table,
    pub status: Status,
}

impl Report {
    fn done(table: Table) -> Self {
        Report {
            table,
            status: Status::Done,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Done => 0,
            Status::Undecided(_) => 2,
        }
    }
}

/// Runs the configured subcommand inside a pool of `--threads` workers.
pub fn run(cli: &Cli) -> Result<Report> {
    match cli.threads {
        Some(0) => Err(CliError::Usage("--threads must be positive".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Usage(e.to_string()))?
            .install(|| dispatch(cli)),
        None => dispatch(cli),
    }
}

fn dispatch(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Family(a) => family(cli, a),
        Command::Table9 => table9(),
        Command::PerfectCheck { gram } => perfect_check(&read_gram(gram)?),
        Command::Recover { gram } => recover(&read_gram(gram)?),
        Command::Count(a) => count(a),
        Command::Bounds(a) => bounds(a),
        Command::Enumerate(a) => enumerate(cli, a),
        Command::Geometry(g) => geometry(cli, g),
    }
}

fn holes_cell(h: &HoleSequence) -> Cell {
    Cell::list(h.holes().iter().copied())
}

fn family(cli: &Cli, a: &FamilyArgs) -> Result<Report> {
    let holes = HoleSequence::new(a.holes.clone())?;
    let l = construct_ld(a.dim, &holes)?;
    let inv = ld_invariants(&l)?;
    if let Some(path) = &a.gram_out {
        let g = if a.scramble {
            scramble_gram(l.gram(), cli.seed)?.0
        } else {
            l.gram().clone()
        };
        write_gram(path, &g)?;
    }
    let mut t = Table::new(&[
        "d", "holes", "support", "det", "pairs", "d2", "perfect", "gaps_ge_6", "auto", "partner",
    ]);
    t.push(vec![
        a.dim.into(),
        holes_cell(&holes),
        Cell::list(l.support().iter().copied()),
        (&inv.det).into(),
        inv.pairs.into(),
        inv.d2.into(),
        (inv.d2 == tensor_width(a.dim)).into(),
        holes.satisfies_perf().into(),
        holes.satisfies_auto(a.dim).into(),
        essential_partner(a.dim, &holes).ok().as_ref().map(holes_cell).into(),
    ]);
    Ok(Report::done(t))
}

fn table9() -> Result<Report> {
    let rows = table9_entries()
        .into_par_iter()
        .map(|(d, h)| {
            let inv = ld_invariants(&construct_ld(d, &h)?)?;
            Ok(vec![
                d.into(),
                holes_cell(&h),
                Cell::list(support(d, &h)),
                (&inv.det).into(),
                inv.pairs.into(),
                inv.d2.into(),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    let mut t = Table::new(&["d", "holes", "support", "det", "pairs", "d2"]);
    rows.into_iter().for_each(|r| t.push(r));
    Ok(Report::done(t))
}

fn perfect_check(g: &GramMatrix) -> Result<Report> {
    let mv = minimal_vectors_general(g)?;
    let d2 = symmetric_rank(mv.representatives())?;
    let mut t = Table::new(&["dim", "det", "minimum", "pairs", "d2", "perfect"]);
    t.push(vec![
        g.dim().into(),
        g.determinant().to_string().into(),
        mv.minimum().to_string().into(),
        mv.len().into(),
        d2.into(),
        (d2 == tensor_width(g.dim())).into(),
    ]);
    Ok(Report::done(t))
}

fn recover(g: &GramMatrix) -> Result<Report> {
    let mv = minimal_vectors_general(g)?;
    let r = recover_holes(&mv)?;
    let mut t = Table::new(&["d", "holes", "candidates", "class_sizes", "error_edges"]);
    t.push(vec![
        r.d.into(),
        holes_cell(&r.holes),
        r.report.candidates.into(),
        Cell::list([r.report.class_sizes.0, r.report.class_sizes.1]),
        r.report.error_edges.into(),
    ]);
    Ok(Report::done(t))
}

fn to_usize(v: u64) -> Result<usize> {
    usize::try_from(v).map_err(|_| CliError::Usage(format!("{v} is too large")))
}

fn decimal(x: &BigRational) -> Cell {
    format!("{:.10}", x.to_f64().unwrap_or(f64::NAN)).into()
}

fn count(a: &CountArgs) -> Result<Report> {
    if let Some(r) = a.alpha {
        let mut t = Table::new(&["n", "alpha"]);
        for n in r.lo..=r.hi {
            t.push(vec![n.into(), alpha(to_usize(n)?)?.into()]);
        }
        return Ok(Report::done(t));
    }
    if let Some(r) = a.sigma {
        let d = a.dim.expect("clap requires --dim");
        let mut t = Table::new(&["d", "n", "sigma"]);
        for n in r.lo..=r.hi {
            t.push(vec![d.into(), n.into(), sigma(d, n)?.into()]);
        }
        return Ok(Report::done(t));
    }
    if let Some(r) = a.family {
        let mut t = Table::new(&["d", "members"]);
        for d in r.lo..=r.hi {
            t.push(vec![d.into(), family_count(to_usize(d)?)?.into()]);
        }
        return Ok(Report::done(t));
    }
    let n = a.asymptotic.expect("clap requires one count");
    let r = alpha_asymptotic_check(n)?;
    let tol = BigRational::new(1.into(), 1_000_000.into());
    let mut t = Table::new(&[
        "n", "alpha", "ratio_lo", "ratio_hi", "limit_lo", "limit_hi", "deviation_hi", "within_1e-6",
    ]);
    t.push(vec![
        n.into(),
        (&r.alpha).into(),
        decimal(&r.ratio.lo),
        decimal(&r.ratio.hi),
        decimal(&r.limit.lo),
        decimal(&r.limit.hi),
        format!("{:.3e}", r.deviation.hi.to_f64().unwrap_or(f64::NAN)).into(),
        (r.deviation.hi < tol).into(),
    ]);
    Ok(Report::done(t))
}

fn log2_cell(l: &Log2Interval) -> Cell {
    format!("{:.3}", l.approx()).into()
}

fn id_choice(d: usize, a: &IdArg) -> IdChoice {
    match a {
        IdArg::Minkowski => IdChoice::Minkowski,
        IdArg::Blichfeldt => IdChoice::Blichfeldt,
        IdArg::Hermite => IdChoice::Hermite,
        IdArg::BestKnown => IdChoice::BestKnown,
        IdArg::Best => IdChoice::Explicit(best_available_id(d)),
        IdArg::Explicit(v) => IdChoice::Explicit(BigUint::from(*v)),
    }
}

fn bounds(a: &BoundsArgs) -> Result<Report> {
    let mut t = Table::new(&[
        "d",
        "minkowski",
        "blichfeldt",
        "hermite",
        "best_known",
        "hollow",
        "id",
        "log2_perfect",
        "log2_perfect_improved",
        "log2_polytopes",
    ]);
    for d in 1..=a.max_dim {
        let (id, plain, improved) = match perfect_count_upper(d, &id_choice(d, &a.id)) {
            Ok((p, q)) => (Cell::from(&p.id), log2_cell(&p.log2), log2_cell(&q.log2)),
            Err(Error::UnknownId(_) | Error::DimensionTooSmall { .. }) => (Cell::Missing, Cell::Missing, Cell::Missing),
            Err(e) => return Err(e.into()),
        };
        t.push(vec![
            d.into(),
            minkowski(d).into(),
            blichfeldt(d).into(),
            hermite(d).into(),
            best_known(d).into(),
            hollow_upper(d).into(),
            id,
            plain,
            improved,
            log2_cell(&polytope_count_upper(d)?.0),
        ]);
    }
    Ok(Report::done(t))
}

fn enumerate(cli: &Cli, a: &EnumerateArgs) -> Result<Report> {
    let defaults = EnumerationOptions::default();
    let opts = EnumerationOptions {
        long: a.long,
        max_index: a.max_index,
        symmetry: !a.no_symmetry,
        hull_pruning: !a.no_hull_pruning,
        minor_pruning: !a.no_minor_pruning,
        node_budget: cli.node_budget.unwrap_or(defaults.node_budget),
        ..defaults
    };
    let prepared = prepare(a.dim, &opts)?;
    let tasks = prepared.tasks();
    eprintln!(
        "enumerate: d={}, {} overlattices, {} tasks",
        a.dim,
        prepared.lattices.len(),
        tasks.len()
    );
    let counter = AtomicU64::new(0);
    let results: Vec<TaskResult> = tasks.par_iter().map(|&t| prepared.run_task(t, &counter)).collect();
    let e = merge(&prepared, results)?;
    eprintln!(
        "enumerate: {} nodes, {} leaves, {} hits, {} classes",
        e.stats.nodes,
        e.stats.leaves,
        e.stats.hits,
        e.records.len()
    );
    let mut t = Table::new(&["label", "det", "kissing", "d2", "indices", "witness_index", "gram"]);
    for r in &e.records {
        t.push(vec![
            r.label.clone().into(),
            (&r.determinant).into(),
            r.kissing.into(),
            r.rank2.into(),
            Cell::list(r.overlattice_indices()),
            r.witness().overlattice.index.into(),
            Cell::matrix(&r.gram),
        ]);
    }
    let status = if e.complete {
        Status::Done
    } else {
        Status::Undecided("node budget exhausted; the list may be incomplete".into())
    };
    Ok(Report { table: t, status })
}

fn random_nonsingular(rng: &mut ChaCha8Rng, d: usize, r: i64) -> Matrix<BigInt> {
    loop {
        let m = Matrix::from_fn(d, d, |_, _| BigInt::from(rng.gen_range(-r..=r)));
        if !det_int(&m).expect("square").is_zero() {
            return m;
        }
    }
}

fn rows_of(m: &Matrix<BigInt>) -> Result<Vec<IntVector>> {
    Ok(m.to_rows().into_iter().map(IntVector::new).collect::<perflat::Result<_>>()?)
}

fn geometry(cli: &Cli, g: &GeometryCommand) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    match *g {
        GeometryCommand::Hollow { dim, max_index } => {
            let limit = hollow_upper(dim);
            let max_index = match max_index {
                Some(m) => m,
                None => (&limit * 2u32)
                    .to_u64()
                    .ok_or_else(|| CliError::Usage("dimension too large".into()))?,
            };
            let mut by_index: BTreeMap<u64, usize> = BTreeMap::new();
            for (_, index) in hollow_systems(dim, max_index)? {
                *by_index.entry(index).or_default() += 1;
            }
            let mut t = Table::new(&["dim", "index", "systems", "within_factorial"]);
            for (index, n) in by_index {
                t.push(vec![dim.into(), index.into(), n.into(), (BigUint::from(index) <= limit).into()]);
            }
            Ok(Report::done(t))
        }
        GeometryCommand::SmallHeight { dim, samples } => {
            let mut ok = 0usize;
            let mut largest = BigUint::zero();
            for _ in 0..samples {
                let basis = random_nonsingular(&mut rng, dim, 2);
                let c = random_nonsingular(&mut rng, dim, 2);
                let lattice = LatticeBasis::new(rows_of(&basis)?)?;
                let vs = rows_of(&c.mul(&basis)?)?;
                let b = small_height_basis(&lattice, &vs)?;
                ok += usize::from(b.satisfies_bound());
                largest = largest.max(b.index.clone());
            }
            let mut t = Table::new(&["dim", "samples", "within_bound", "largest_index"]);
            t.push(vec![dim.into(), samples.into(), ok.into(), largest.into()]);
            Ok(Report::done(t))
        }
        GeometryCommand::Polytope { dim, samples } => {
            let (mut empty, mut vertices, mut done) = (0usize, 0usize, 0usize);
            while done < samples {
                let b = random_nonsingular(&mut rng, dim, 2);
                let gram = GramMatrix::from_integers(&b.mul(&b.transpose())?)?;
                let m = minimal_vectors_general(&gram)?.minimum().to_integer();
                // Squared norm below twice the minimum.
                let short: Vec<IntVector> = short_vectors(&b.mul(&b.transpose())?, &(&m * 2 - 1))?
                    .into_iter()
                    .map(|(v, _)| v)
                    .filter(|_| rng.gen_bool(0.7))
                    .collect();
                if short.is_empty() {
                    continue;
                }
                let rows = Matrix::from_rows(short.iter().map(|v| v.coords().to_vec()).collect())?;
                if rank_int(&rows) < dim {
                    continue;
                }
                let set = SymmetricGeneratorSet::new(short)?;
                empty += usize::from(interior_lattice_points(&set)?.len() == 1);
                let mut pts = set.points();
                pts.sort();
                vertices += usize::from(hull_vertices(&set)? == pts);
                done += 1;
            }
            let mut t = Table::new(&["dim", "samples", "interior_is_origin", "vertices_are_generators"]);
            t.push(vec![dim.into(), samples.into(), empty.into(), vertices.into()]);
            Ok(Report::done(t))
        }
        GeometryCommand::Roots { r#type, rank } => {
            let t_ = match r#type {
                RootArg::A => RootType::A,
                RootArg::D => RootType::D,
            };
            let exhaustive = if rank <= ROOT_SEARCH_MAX_DIM {
                Some(max_root_index_exhaustive(t_, rank)?)
            } else {
                None
            };
            let mut t = Table::new(&["type", "rank", "positive_roots", "max_index", "formula"]);
            t.push(vec![
                t_.to_string().into(),
                rank.into(),
                positive_roots(t_, rank)?.len().into(),
                exhaustive.into(),
                root_lattice_extremes(t_, rank).ok().into(),
            ]);
            Ok(Report::done(t))
        }
    }
}
