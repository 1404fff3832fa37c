use anyhow::{anyhow, bail, Context, Result};
use clap::Subcommand;
use levelzero::building::{
    all_tight_paths, ball, convex_hull, distance, enclos, relative_position, tight_path, ConvexComplex, LatticeClass,
    DEFAULT_BUDGET,
};

use crate::config::RunConfig;
use crate::report::{Report, Table};

#[derive(Debug, Subcommand)]
pub enum BuildingCmd {
    /// Distance and relative position of two vertices
    Distance {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Vertices of the enclos of two vertices
    Enclos {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// The canonical tight path from x to y, or every tight path with --all
    TightPath {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        all: bool,
    },
    /// Vertices within --radius of a centre (the standard lattice by default)
    Ball {
        #[arg(long)]
        center: Option<String>,
    },
    /// Convex hull of a list of vertices, separated by ';'
    Hull {
        #[arg(long)]
        vertices: String,
    },
}

/// A vertex is either the JSON object {"d", "p", "hnf"} or the shorthand
/// `diag:a1,...,ad` for the class of diag(p^a1, ..., p^ad).
pub fn parse_vertex(s: &str, cfg: &RunConfig) -> Result<LatticeClass> {
    let t = s.trim();
    let v = if let Some(rest) = t.strip_prefix("diag:") {
        let p = cfg.building_p()?;
        let exps: Vec<i64> = rest
            .split(',')
            .map(|x| x.trim().parse::<i64>().with_context(|| format!("bad exponent '{x}'")))
            .collect::<Result<_>>()?;
        LatticeClass::diagonal(p, &exps)
    } else {
        serde_json::from_str::<LatticeClass>(t).with_context(|| format!("bad vertex '{t}'"))?
    };
    if let Some(d) = cfg.d {
        if v.d() != d {
            bail!("vertex {t} has d={} but d={d} was configured", v.d());
        }
    }
    if let Some(p) = cfg.p {
        if v.p() != p {
            bail!("vertex {t} has p={} but p={p} was configured", v.p());
        }
    }
    Ok(v)
}

pub fn parse_vertex_list(s: &str, cfg: &RunConfig) -> Result<Vec<LatticeClass>> {
    let t = s.trim();
    if t.starts_with('[') {
        let vs: Vec<LatticeClass> = serde_json::from_str(t).context("bad vertex list")?;
        return Ok(vs);
    }
    t.split(';').filter(|x| !x.trim().is_empty()).map(|x| parse_vertex(x, cfg)).collect()
}

fn json(v: &impl serde::Serialize) -> Result<String> {
    Ok(serde_json::to_string(v)?)
}

fn vertex_table(name: &str, vs: &[LatticeClass]) -> Result<Table> {
    let mut t = Table::new(name, &["index", "vertex"]);
    for (i, v) in vs.iter().enumerate() {
        t.push(vec![i.to_string(), json(v)?]);
    }
    Ok(t)
}

pub fn complex_table(c: &ConvexComplex) -> Result<Table> {
    let mut t = Table::new("simplices", &["index", "dim", "vertices"]);
    for (i, s) in c.simplices.iter().enumerate() {
        t.push(vec![i.to_string(), (s.len() - 1).to_string(), json(s)?]);
    }
    Ok(t)
}

pub fn run(cmd: &BuildingCmd, cfg: &RunConfig) -> Result<Report> {
    let budget = cfg.budget_or(DEFAULT_BUDGET);
    let mut r;
    match cmd {
        BuildingCmd::Distance { x, y } => {
            let (x, y) = (parse_vertex(x, cfg)?, parse_vertex(y, cfg)?);
            r = cfg.report("building distance");
            let rp = relative_position(&x, &y)?;
            let mut t = Table::new("distance", &["distance", "relative_position"]);
            t.push(vec![distance(&x, &y)?.to_string(), json(&rp.a)?]);
            r.table(t);
        }
        BuildingCmd::Enclos { x, y } => {
            let (x, y) = (parse_vertex(x, cfg)?, parse_vertex(y, cfg)?);
            r = cfg.report("building enclos");
            r.table(vertex_table("enclos", &enclos(&x, &y)?)?);
        }
        BuildingCmd::TightPath { x, y, all } => {
            let (x, y) = (parse_vertex(x, cfg)?, parse_vertex(y, cfg)?);
            r = cfg.report("building tight-path");
            let paths = if *all {
                all_tight_paths(&x, &y, budget.min(usize::MAX as u128) as usize)?
            } else {
                vec![tight_path(&x, &y)?]
            };
            let mut t = Table::new("tight_paths", &["path", "step", "vertex"]);
            for (i, p) in paths.iter().enumerate() {
                for (k, v) in p.iter().enumerate() {
                    t.push(vec![i.to_string(), k.to_string(), json(v)?]);
                }
            }
            r.table(t);
        }
        BuildingCmd::Ball { center } => {
            let c = match center {
                Some(s) => parse_vertex(s, cfg)?,
                None => LatticeClass::standard(cfg.d()?, cfg.building_p()?),
            };
            let radius = cfg.radius.ok_or_else(|| anyhow!("--radius is required"))?;
            r = cfg.report("building ball");
            r.header("radius", radius);
            r.table(vertex_table("ball", &ball(&c, radius, budget)?)?);
        }
        BuildingCmd::Hull { vertices } => {
            let vs = parse_vertex_list(vertices, cfg)?;
            if vs.is_empty() {
                bail!("hull needs at least one vertex");
            }
            let c = convex_hull(&vs, budget.min(usize::MAX as u128) as usize)?;
            r = cfg.report("building hull");
            r.table(vertex_table("vertices", &c.vertices)?);
            r.table(complex_table(&c)?);
        }
    }
    Ok(r)
}
