use anyhow::{bail, Context, Result};
use clap::Args;
use levelzero::building::{ball, convex_hull, ConvexComplex, LatticeClass, DEFAULT_BUDGET};
use levelzero::coeff::*;
use levelzero::linalg::{identity, mat_mul, Field, PrimeField, Rationals};

use crate::cmd_building::{complex_table, parse_vertex_list};
use crate::config::RunConfig;
use crate::report::{Report, Table, Verdict};

#[derive(Debug, Args)]
pub struct HomologyArgs {
    /// use the ball of --radius around the standard vertex (the default)
    #[arg(long, conflicts_with_all = ["hull", "complex"])]
    pub ball: bool,
    /// use the convex hull of these vertices, separated by ';'
    #[arg(long, conflicts_with = "complex")]
    pub hull: Option<String>,
    /// read the complex from a JSON file {"vertices": [...], "simplices": [...]}
    #[arg(long)]
    pub complex: Option<std::path::PathBuf>,
    /// projective or flag
    #[arg(long, default_value = "projective")]
    pub space: String,
    /// the constant coefficient system instead of the orbit system
    #[arg(long)]
    pub constant: bool,
    /// debug: flip the sign of one face of the first top-dimensional simplex
    #[arg(long)]
    pub corrupt_sign: bool,
    /// skip the reconstruction and projector checks
    #[arg(long)]
    pub homology_only: bool,
}

fn load_complex(a: &HomologyArgs, cfg: &RunConfig) -> Result<ConvexComplex> {
    let budget = cfg.budget_or(DEFAULT_BUDGET);
    if let Some(path) = &a.complex {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        return serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()));
    }
    if let Some(h) = &a.hull {
        let vs = parse_vertex_list(h, cfg)?;
        if vs.is_empty() {
            bail!("hull needs at least one vertex");
        }
        return Ok(convex_hull(&vs, budget.min(usize::MAX as u128) as usize)?);
    }
    let radius = cfg.radius.unwrap_or(1);
    let vs = ball(&LatticeClass::standard(cfg.d()?, cfg.building_p()?), radius, budget)?;
    Ok(ConvexComplex::from_vertices(vs)?)
}

pub fn run(a: &HomologyArgs, cfg: &RunConfig) -> Result<Report> {
    let c = load_complex(a, cfg)?;
    let p = c.vertices[0].p();
    cfg.ring.validate(p)?;
    let space = BaseSpace::parse(&a.space)?;
    let cs = if a.constant {
        CoefficientSystem::constant(&c, cfg.ring)
    } else {
        let os = build_orbit_system(&c, space, cfg.ring, cfg.level, cfg.budget_or(DEFAULT_POINT_BUDGET))?;
        to_coefficient_system(&os)
    };

    let mut r = cfg.report("homology");
    r.header("system", if a.constant { "constant".to_string() } else { format!("orbit {space:?}") });
    r.header("vertices", c.vertices.len());
    r.header("dim", c.dim());
    r.table(complex_table(&c)?);

    let corruption = if a.corrupt_sign {
        let top = c.simplices_of_dim(c.dim()).next().filter(|_| c.dim() > 0);
        let Some(simplex) = top else { bail!("--corrupt-sign needs a complex of positive dimension") };
        Some(SignCorruption { simplex, face: 0 })
    } else {
        None
    };
    let cc = chain_complex_unchecked(&cs, corruption)?;
    let squared = cc.boundary_squared_zero();
    r.flag("boundary-squared", "the boundary maps compose to zero", Verdict::from_bool(squared));

    let mut t = Table::new("homology", &["degree", "chain_rank", "homology_rank"]);
    if !squared {
        for (k, dim) in cc.dims.iter().enumerate() {
            t.push(vec![k.to_string(), dim.to_string(), String::new()]);
        }
        r.table(t);
        for (name, what) in FLAGS {
            r.flag(name, what, Verdict::Skip);
        }
        return Ok(r);
    }
    let h = homology(&cc, cfg.ring);
    for (k, hk) in h.iter().enumerate() {
        t.push(vec![k.to_string(), cc.dims[k].to_string(), hk.rank.to_string()]);
    }
    r.table(t);
    r.flag(FLAGS[0].0, FLAGS[0].1, Verdict::from_bool(h[1..].iter().all(|x| x.rank == 0)));
    r.flag(FLAGS[1].0, FLAGS[1].1, Verdict::from_bool(h[0].rank as i64 == cc.euler_characteristic()));
    if a.homology_only {
        r.flag(FLAGS[2].0, FLAGS[2].1, Verdict::Skip);
        r.flag(FLAGS[3].0, FLAGS[3].1, Verdict::Skip);
        return Ok(r);
    }
    let (recon, proj) = match cfg.ring {
        CoefficientRing::Rationals => projector_checks(&Rationals, &cs, &cc)?,
        CoefficientRing::PrimeField(l) => projector_checks(&PrimeField::new(l), &cs, &cc)?,
    };
    r.flag(FLAGS[2].0, FLAGS[2].1, Verdict::from_bool(recon));
    r.flag(FLAGS[3].0, FLAGS[3].1, Verdict::from_bool(proj));
    Ok(r)
}

const FLAGS: [(&str, &str); 4] = [
    ("acyclicity", "H_n = 0 for every n > 0"),
    ("euler", "rank H_0 equals the Euler characteristic"),
    ("reconstruction", "rank e_sigma(H_0) = rank V_sigma for every simplex"),
    ("projector-identities", "e_x idempotent, e_x e_y = e_y e_x on edges, u_Sigma = identity on H_0"),
];

fn projector_checks<F: Field>(f: &F, cs: &CoefficientSystem, cc: &ChainComplex) -> Result<(bool, bool)> {
    let fam = projectors(f, cs, cc)?;
    let recon = verify_level0_reconstruction(f, cs, &fam)?.pass;
    let c = &cs.complex;
    let e: Vec<_> = (0..c.vertices.len()).map(|x| fam.e_vertex(f, x)).collect();
    let idempotent = e.iter().all(|m| mat_mul(f, m, m) == *m);
    let commute = c.simplices_of_dim(1).all(|s| {
        let (x, y) = (c.simplices[s][0], c.simplices[s][1]);
        mat_mul(f, &e[x], &e[y]) == mat_mul(f, &e[y], &e[x])
    });
    let total = fam.u(f, &c.simplices) == identity(f, fam.h0_dim);
    Ok((recon, fam.well_defined && fam.sections && idempotent && commute && total))
}
