//! Acceptance suite: one PASS/FAIL line per criterion. All comparisons are
//! exact (integers, finite fields, rationals, cyclotomic integers), so every
//! tolerance is zero.

mod common;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use levelzero::arith::binomial;
use levelzero::building::*;
use levelzero::coeff::*;
use levelzero::cyclotomic::RootOfUnity;
use levelzero::dl::{lefschetz_reconcile, spectral_side, CharacterData, Perturbation, DEFAULT_ENUMERATION_BUDGET};
use levelzero::langlands::{elliptic_character_identity, find_witness, residue_field, theta_on_d, AdmissiblePair};
use levelzero::linalg::{mat_mul, Field, PrimeField, Rationals};
use levelzero::rep::{descent_table, elliptic_coefficients, is_hook_set};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use common::{ball_complex, check_projector_calculus, diag, hull, ELL};

const SEED: u64 = 0x5eed_0001;
const TOLERANCE: &str = "exact";

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

struct Instance {
    label: String,
    cs: CoefficientSystem,
    rings: Vec<CoefficientRing>,
}

fn rings_for(p: u64) -> Vec<CoefficientRing> {
    let mut out = vec![CoefficientRing::Rationals];
    out.extend([3u64, 5].into_iter().filter(|&l| l != p).map(CoefficientRing::PrimeField));
    out
}

fn instance(label: String, c: &ConvexComplex, space: BaseSpace) -> Result<Instance, String> {
    let p = c.vertices[0].p();
    let os = build_orbit_system(c, space, CoefficientRing::Rationals, None, DEFAULT_POINT_BUDGET).map_err(err)?;
    Ok(Instance { label, cs: to_coefficient_system(&os), rings: rings_for(p) })
}

/// H_n = 0 for n > 0 over every ring of the instance; returns the number of
/// (instance, ring) pairs checked.
fn check_acyclic(instances: &[Instance]) -> Result<usize, String> {
    let mut checked = 0;
    for inst in instances {
        let cc = chain_complex(&inst.cs).map_err(err)?;
        for &ring in &inst.rings {
            let h = homology(&cc, ring);
            ensure(h[1..].iter().all(|x| x.rank == 0), || {
                format!("{} over {ring:?}: {:?}", inst.label, h.iter().map(|x| x.rank).collect::<Vec<_>>())
            })?;
            ensure(h[0].rank as i64 == cc.euler_characteristic(), || format!("{}: H_0 ≠ Euler", inst.label))?;
            checked += 1;
        }
    }
    Ok(checked)
}

fn reconstruct<F: Field>(f: &F, inst: &Instance) -> Result<usize, String> {
    let cc = chain_complex(&inst.cs).map_err(err)?;
    let fam = projectors(f, &inst.cs, &cc).map_err(err)?;
    let rep = verify_level0_reconstruction(f, &inst.cs, &fam).map_err(err)?;
    ensure(rep.pass && rep.checked == inst.cs.complex.simplices.len(), || format!("{}: {rep:?}", inst.label))?;
    Ok(rep.checked)
}

fn tree_instances() -> Result<Vec<Instance>, String> {
    let mut out = Vec::new();
    for q in [2u64, 3] {
        let o = LatticeClass::standard(2, q);
        for r in 1..=3 {
            out.push(instance(format!("tree q={q} ball r={r}"), &ball_complex(2, q, r), BaseSpace::Projective)?);
        }
        for y in ball(&o, 4, DEFAULT_BUDGET).map_err(err)? {
            if y == o {
                continue;
            }
            let c = hull(&[o.clone(), y.clone()]);
            out.push(instance(format!("tree q={q} hull(o,{y:?})"), &c, BaseSpace::Projective)?);
        }
    }
    Ok(out)
}

fn rank2_instances() -> Result<Vec<Instance>, String> {
    let o = LatticeClass::standard(3, 2);
    let mut out = Vec::new();
    for space in [BaseSpace::Projective, BaseSpace::Flag] {
        out.push(instance(format!("d=3 ball r=1 {space:?}"), &ball_complex(3, 2, 1), space)?);
    }
    for y in ball(&o, 2, DEFAULT_BUDGET).map_err(err)? {
        if y == o {
            continue;
        }
        let c = hull(&[o.clone(), y.clone()]);
        out.push(instance(format!("d=3 hull(o,{y:?}) Projective"), &c, BaseSpace::Projective)?);
    }
    for a in [[1, 0, 0], [1, 1, 0], [2, 0, 0], [2, 1, 0], [2, 2, 0]] {
        let c = hull(&[o.clone(), diag(2, &a)]);
        out.push(instance(format!("d=3 hull(o,{a:?}) Flag"), &c, BaseSpace::Flag)?);
    }
    Ok(out)
}

fn reconstruction(all: &[&[Instance]]) -> Outcome {
    let mut simplices = 0;
    let mut runs = 0;
    for inst in all.iter().flat_map(|s| s.iter()) {
        for &ring in &inst.rings {
            simplices += match ring {
                CoefficientRing::Rationals => reconstruct(&Rationals, inst)?,
                CoefficientRing::PrimeField(l) => reconstruct(&PrimeField::new(l), inst)?,
            };
            runs += 1;
        }
    }
    Ok(format!("{runs} (instance, ring) runs, {simplices} simplices"))
}

fn projector_calculus() -> Outcome {
    let mut n = 0;
    let star = |q: u64| -> (ConvexComplex, Vec<LatticeClass>, Vec<LatticeClass>) {
        let c = ball_complex(2, q, 1);
        let o = LatticeClass::standard(2, q);
        let nb: Vec<LatticeClass> = c.vertices.iter().filter(|v| **v != o).cloned().collect();
        let half = nb.len() / 2;
        let mut plus = vec![o.clone()];
        plus.extend(nb[..half].iter().cloned());
        let mut minus = vec![o];
        minus.extend(nb[half..].iter().cloned());
        (c, plus, minus)
    };
    for q in [2u64, 3] {
        let (c, plus, minus) = star(q);
        check_projector_calculus(&c, BaseSpace::Projective, &plus, &minus);
        n += 1;
    }

    let a = LatticeClass::standard(2, 3);
    let b = diag(3, &[3, 0]);
    let path = tight_path(&a, &b).unwrap();
    let c = hull(&[a, b]);
    check_projector_calculus(&c, BaseSpace::Projective, &path[..3], &path[1..]);
    n += 1;

    // radius-2 tree split into two subtrees meeting at the centre
    let c = ball_complex(2, 2, 2);
    let o = LatticeClass::standard(2, 2);
    let nb = neighbours(&o).unwrap();
    let branch = |v: &LatticeClass| {
        c.vertices
            .iter()
            .filter(|w| *w == v || (**w != o && distance(w, v).unwrap() == 1 && distance(w, &o).unwrap() == 2))
            .cloned()
            .collect::<Vec<_>>()
    };
    let mut plus = vec![o.clone()];
    plus.extend(branch(&nb[0]));
    plus.extend(branch(&nb[1]));
    let mut minus = vec![o.clone()];
    minus.extend(branch(&nb[2]));
    plus.sort();
    minus.sort();
    check_projector_calculus(&c, BaseSpace::Projective, &plus, &minus);
    n += 1;

    let c = hull(&[LatticeClass::standard(3, 2), diag(2, &[2, 1, 0])]);
    let chambers: Vec<Vec<LatticeClass>> = c.simplices_of_dim(2).map(|s| c.simplex(s).vertices).collect();
    for space in [BaseSpace::Projective, BaseSpace::Flag] {
        check_projector_calculus(&c, space, &chambers[0], &chambers[1]);
        n += 1;
    }
    ensure(n >= 5, || format!("only {n} decompositions"))?;
    Ok(format!("{n} decompositions"))
}

fn local_maps() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let o = LatticeClass::standard(3, 2);
    let inner = ball(&o, 1, DEFAULT_BUDGET).map_err(err)?;
    let outer = ball(&o, 2, DEFAULT_BUDGET).map_err(err)?;
    let f = PrimeField::new(ELL);
    let mut seen = BTreeSet::new();
    let (mut pairs, mut paths_checked, mut triples) = (0, 0, 0);
    for _ in 0..10_000 {
        if pairs >= 50 {
            break;
        }
        let x = inner.choose(&mut rng).unwrap().clone();
        let y = outer.choose(&mut rng).unwrap().clone();
        if !seen.insert((x.clone(), y.clone())) {
            continue;
        }
        let paths = all_tight_paths(&y, &x, 1000).map_err(err)?;
        if paths.len() < 2 {
            continue;
        }
        let space =
            if pairs % 2 == 1 && distance(&x, &y).map_err(err)? <= 2 { BaseSpace::Flag } else { BaseSpace::Projective };
        let c = hull(&[x.clone(), y.clone()]);
        let os = build_orbit_system(&c, space, CoefficientRing::Rationals, None, DEFAULT_POINT_BUDGET).map_err(err)?;
        let cs = to_coefficient_system(&os);
        let lm = LocalMaps::new(&cs, &f);
        let (xi, yi) = (c.vertex_index(&x).unwrap(), c.vertex_index(&y).unwrap());
        let eps = lm.epsilon(yi, xi).map_err(err)?;
        for p in &paths {
            ensure(lm.epsilon_local(p).map_err(err)? == eps, || format!("path dependence for ({x:?}, {y:?})"))?;
            paths_checked += 1;
        }
        for (a, b) in [(xi, yi), (yi, xi)] {
            for z in enclos(&c.vertices[a], &c.vertices[b]).map_err(err)? {
                let zi = c.vertex_index(&z).unwrap();
                let lhs = mat_mul(&f, &lm.epsilon(zi, a).map_err(err)?, &lm.epsilon(b, zi).map_err(err)?);
                ensure(lhs == lm.epsilon(b, a).map_err(err)?, || format!("composition fails at z={z:?}"))?;
                triples += 1;
            }
        }
        pairs += 1;
    }
    ensure(pairs >= 50 && triples >= 50, || format!("pairs={pairs} triples={triples}"))?;
    Ok(format!("{pairs} seeded pairs, {paths_checked} tight paths, {triples} enclos triples"))
}

/// Graph distance in the 1-skeleton of a convex ball, by breadth-first search.
fn skeleton_distances(vs: &[LatticeClass]) -> Vec<Vec<u32>> {
    let n = vs.len();
    let index: HashMap<&LatticeClass, usize> = vs.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let adj: Vec<Vec<usize>> =
        vs.par_iter().map(|v| neighbours(v).unwrap().iter().filter_map(|w| index.get(w).copied()).collect()).collect();
    (0..n)
        .map(|s| {
            let mut dist = vec![u32::MAX; n];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &adj[u] {
                    if dist[v] == u32::MAX {
                        dist[v] = dist[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
            dist
        })
        .collect()
}

/// Checks every pair (x, y) with x = vs[i]; returns (pairs, enumerated paths).
fn check_row(vs: &[LatticeClass], graph: &[Vec<u32>], i: usize, enumerate: bool) -> Result<(usize, usize), String> {
    let x = &vs[i];
    let mut enumerated = 0;
    for (j, y) in vs.iter().enumerate() {
        let rp = relative_position(x, y).map_err(err)?;
        ensure(*rp.a.last().unwrap() == 0 && rp.a.windows(2).all(|w| w[0] >= w[1]), || format!("{rp:?}"))?;
        let dist = rp.distance();
        ensure(dist == rp.a[0] && dist == graph[i][j], || {
            format!("{x:?} {y:?}: distance {dist}, a_1 {}, graph {}", rp.a[0], graph[i][j])
        })?;
        let canon = tight_path(y, x).map_err(err)?;
        ensure(canon.len() as u32 == dist + 1 && (!enumerate || is_tight_path(&canon).map_err(err)?), || {
            format!("canonical path {x:?} {y:?}")
        })?;
        if enumerate {
            for p in all_tight_paths(y, x, 100_000).map_err(err)? {
                ensure(p.len() == canon.len(), || format!("unequal tight paths {x:?} {y:?}"))?;
                enumerated += 1;
            }
        }
    }
    Ok((vs.len(), enumerated))
}

fn distance_and_tight_paths() -> Outcome {
    let (mut pairs, mut enumerated) = (0, 0);
    for (d, q, r, enumerate) in [(2usize, 2u64, 3u32, true), (2, 3, 3, true), (3, 2, 2, true), (3, 2, 3, false)] {
        let vs = ball(&LatticeClass::standard(d, q), r, DEFAULT_BUDGET).map_err(err)?;
        let graph = skeleton_distances(&vs);
        let rows: Vec<(usize, usize)> =
            (0..vs.len()).into_par_iter().map(|i| check_row(&vs, &graph, i, enumerate)).collect::<Result<_, _>>()?;
        pairs += rows.iter().map(|r| r.0).sum::<usize>();
        enumerated += rows.iter().map(|r| r.1).sum::<usize>();
    }
    Ok(format!("{pairs} pairs, {enumerated} enumerated tight paths; enumeration up to radius 2 for d=3"))
}

fn lefschetz() -> Outcome {
    let mut cases = 0;
    for (d, qs) in [(2u32, vec![2u64, 3, 4]), (3, vec![2])] {
        for q in qs {
            for m in 1..=6 {
                let r = lefschetz_reconcile(d, q, m, DEFAULT_ENUMERATION_BUDGET).map_err(err)?;
                ensure(r.matches, || format!("{r:?}"))?;
                cases += 1;
            }
        }
    }
    for (m, want) in [(1, 0), (2, 6)] {
        let r = lefschetz_reconcile(2, 2, m, DEFAULT_ENUMERATION_BUDGET).map_err(err)?;
        ensure(r.geometric == BigInt::from(want), || format!("anchor (2,2,{m}) gave {}", r.geometric))?;
    }
    Ok(format!("{cases} (d,q,m) cases, anchors (2,2,1)=0 (2,2,2)=6"))
}

fn hook_criterion() -> Outcome {
    let mut checked = 0;
    for e in 1..=8u32 {
        let (ps, a) = elliptic_coefficients(e).map_err(err)?;
        let col = ps.iter().position(|p| p.parts() == [e]).unwrap();
        for (i, l) in ps.iter().enumerate() {
            ensure((*a.get(i, col) != 0) == l.is_hook(), || format!("e={e} λ={l}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} partitions, e ≤ 8"))
}

fn descent_identity() -> Outcome {
    let mut checked = 0;
    for e in 1..=8u32 {
        let mut failing_non_hook = false;
        for row in descent_table(e).map_err(err)? {
            let binom = binomial(e as u64 - 1, row.set.len() as u64);
            let hook = is_hook_set(e, &row.set);
            ensure((row.count == binom) == hook, || format!("e={e} I={:?} count={}", row.set, row.count))?;
            failing_non_hook |= !hook && row.count != binom;
            checked += 1;
        }
        ensure(!(4..=7).contains(&e) || failing_non_hook, || format!("no failing non-hook for e={e}"))?;
    }
    Ok(format!("{checked} subsets, e ≤ 8"))
}

fn character_identities() -> Outcome {
    let (mut identities, mut thetas) = (0, 0);
    for q in [2u64, 3] {
        for d in 1..=4u32 {
            for f in (1..=d).filter(|f| d % f == 0) {
                let e = d / f;
                let field = residue_field(q, f).map_err(err)?;
                let n = q.pow(f) - 1;
                let mut orbits_seen = BTreeSet::new();
                for k in 0..n {
                    let residue = CharacterData::new(q, f, k).map_err(err)?;
                    if !residue.is_primitive() {
                        continue;
                    }
                    let orbit: BTreeSet<u64> = (0..f).map(|j| k * q.pow(j) % n).collect();
                    if !orbits_seen.insert(orbit) {
                        continue;
                    }
                    let pair = AdmissiblePair::from_residue(residue, e).map_err(err)?;
                    let (alpha, _) =
                        find_witness(&pair, &field).ok_or_else(|| format!("no witness q={q} f={f} k={k}"))?;
                    for i in 0..e {
                        let r = elliptic_character_identity(d, i, &pair, &field, alpha).map_err(err)?;
                        ensure(r.equal && r.nonzero, || format!("{r:?}"))?;
                        identities += 1;
                    }
                    let table = theta_on_d(&pair, e).map_err(err)?;
                    let pi = table.rows.iter().find(|r| r.element == "Pi_D^f").ok_or("missing Π row")?;
                    ensure(pi.value == RootOfUnity::one(), || {
                        format!("Θ(Π^f) = {:?} for q={q} d={d} k={k}", pi.value)
                    })?;
                    thetas += 1;
                }
            }
        }
    }
    Ok(format!("{identities} identities, {thetas} Θ(Π^f) values"))
}

fn negative_controls() -> Outcome {
    let c = ball_complex(3, 2, 1);
    let cs = to_coefficient_system(
        &build_orbit_system(&c, BaseSpace::Projective, CoefficientRing::Rationals, None, DEFAULT_POINT_BUDGET)
            .map_err(err)?,
    );
    let tri = c.simplices_of_dim(2).next().unwrap();
    let bad = chain_complex_unchecked(&cs, Some(SignCorruption { simplex: tri, face: 0 })).map_err(err)?;
    ensure(!bad.boundary_squared_zero(), || "corrupted sign still gives ∂² = 0".into())?;
    let r = lefschetz_reconcile(2, 2, 2, DEFAULT_ENUMERATION_BUDGET).map_err(err)?;
    let perturbed = spectral_side(2, 2, 2, Perturbation::NegateLambdaZero).map_err(err)?;
    ensure(perturbed != r.geometric, || "negated eigenvalue still matches".into())?;
    Ok(format!(
        "sign corruption: ∂² ≠ 0 (FAIL as expected); negated λ_0: {} vs {} (FAIL as expected)",
        perturbed, r.geometric
    ))
}

struct Runner {
    failures: usize,
}

impl Runner {
    fn run<T>(&mut self, name: &str, limit: Option<Duration>, f: impl FnOnce() -> Result<T, String>) -> Option<T>
    where
        T: Summary,
    {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
        let elapsed = start.elapsed();
        let over = limit.filter(|l| elapsed > *l);
        let (status, detail, value) = match (result, over) {
            (Ok(v), None) => ("PASS", v.summary(), Some(v)),
            (Ok(v), Some(l)) => ("FAIL", format!("{} but exceeded {:?}", v.summary(), l), None),
            (Err(e), _) => ("FAIL", e, None),
        };
        if status == "FAIL" {
            self.failures += 1;
        }
        let limit = limit.map(|l| format!(" limit={}s", l.as_secs())).unwrap_or_default();
        println!("{status} {name:<24} [{:.2}s{limit} tol={TOLERANCE}] {detail}", elapsed.as_secs_f64());
        value
    }
}

trait Summary {
    fn summary(&self) -> String;
}

impl Summary for String {
    fn summary(&self) -> String {
        self.clone()
    }
}

impl Summary for (Vec<Instance>, usize) {
    fn summary(&self) -> String {
        format!("{} complexes, {} (complex, ring) homologies with H_n>0 = 0", self.0.len(), self.1)
    }
}

fn main() -> ExitCode {
    println!("acceptance suite seed={SEED:#x} tolerance={TOLERANCE}");
    let mut runner = Runner { failures: 0 };
    let tree = runner
        .run("acyclicity-tree", Some(Duration::from_secs(120)), || {
            let inst = tree_instances()?;
            let n = check_acyclic(&inst)?;
            Ok((inst, n))
        })
        .map(|x| x.0)
        .unwrap_or_default();
    let rank2 = runner
        .run("acyclicity-rank2", Some(Duration::from_secs(600)), || {
            let inst = rank2_instances()?;
            let n = check_acyclic(&inst)?;
            Ok((inst, n))
        })
        .map(|x| x.0)
        .unwrap_or_default();
    runner.run("reconstruction", None, || {
        ensure(!tree.is_empty() && !rank2.is_empty(), || "acyclicity instances unavailable".into())?;
        reconstruction(&[&tree, &rank2])
    });
    runner.run("projector-calculus", None, projector_calculus);
    runner.run("local-maps", None, local_maps);
    runner.run("distance-tight-paths", None, distance_and_tight_paths);
    runner.run("lefschetz-match", Some(Duration::from_secs(300)), lefschetz);
    runner.run("hook-criterion", None, hook_criterion);
    runner.run("descent-identity", None, descent_identity);
    runner.run("character-identity", None, character_identities);
    runner.run("negative-controls", None, negative_controls);
    if runner.failures == 0 {
        println!("all criteria PASS");
        ExitCode::SUCCESS
    } else {
        println!("{} criteria FAIL", runner.failures);
        ExitCode::FAILURE
    }
}
