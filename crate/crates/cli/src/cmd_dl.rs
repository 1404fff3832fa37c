use anyhow::{Context, Result};
use clap::Subcommand;
use levelzero::dl::{cohomology_summary, count_points, fixed_points, lefschetz_reconcile, DEFAULT_ENUMERATION_BUDGET};
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::report::{Report, Table, Verdict};

#[derive(Debug, Subcommand)]
pub enum DlCmd {
    /// Number of F_{q^m}-points
    Count {
        #[arg(long)]
        m: u32,
    },
    /// Point counts against the spectral side for m = 1..=mmax
    Lefschetz {
        #[arg(long, default_value_t = 6)]
        mmax: u32,
    },
    /// Points with X = zeta * g * F^m(X), for g in GL_d(F_p)
    Fixed {
        #[arg(long)]
        m: u32,
        /// JSON matrix with integer entries, e.g. [[0,1],[1,1]]
        #[arg(long)]
        g: String,
        /// zeta = eta^zeta, eta a generator of the (q^d - 1)-th roots of unity
        #[arg(long, default_value_t = 0)]
        zeta: u64,
    },
}

pub fn run(cmd: &DlCmd, cfg: &RunConfig) -> Result<Report> {
    let d = cfg.d()? as u32;
    let q = cfg.q()?;
    let budget = cfg.budget_or(DEFAULT_ENUMERATION_BUDGET);
    match cmd {
        DlCmd::Count { m } => {
            let n = count_points(d, q, *m, budget)?;
            let mut r = cfg.report("dl count");
            let mut t = Table::new("count", &["d", "q", "m", "points"]);
            t.push(vec![d.to_string(), q.to_string(), m.to_string(), n.to_string()]);
            r.table(t);
            Ok(r)
        }
        DlCmd::Lefschetz { mmax } => {
            // independent tasks on the worker pool; rows come back in m order
            let reports: Vec<_> = (1..=*mmax).into_par_iter().map(|m| lefschetz_reconcile(d, q, m, budget)).collect();
            let mut r = cfg.report("dl lefschetz");
            let mut t = Table::new("lefschetz", &["d", "q", "m", "geometric", "spectral", "match"]);
            let mut all = true;
            for rep in reports {
                let rep = rep?;
                all &= rep.matches;
                t.push(vec![
                    d.to_string(),
                    q.to_string(),
                    rep.m.to_string(),
                    rep.geometric.to_string(),
                    rep.spectral.to_string(),
                    rep.matches.to_string(),
                ]);
            }
            r.table(t);
            let mut s = Table::new("spectral", &["f", "orbit_rep", "i", "degree", "dim", "eigenvalue"]);
            for row in cohomology_summary(d, q)? {
                s.push(vec![
                    row.f.to_string(),
                    row.representative.to_string(),
                    row.i.to_string(),
                    row.degree.to_string(),
                    row.dim.to_string(),
                    row.eigenvalue.to_string(),
                ]);
            }
            r.table(s);
            r.flag(
                "lefschetz-match",
                "point counts equal the alternating trace of Frobenius powers",
                Verdict::from_bool(all),
            );
            Ok(r)
        }
        DlCmd::Fixed { m, g, zeta } => {
            let g: Vec<Vec<i64>> = serde_json::from_str(g).with_context(|| format!("bad matrix '{g}'"))?;
            let fp = fixed_points(d, q, &g, *zeta, *m, budget)?;
            let mut r = cfg.report("dl fixed");
            let mut t = Table::new("fixed", &["d", "q", "m", "zeta", "points", "lift"]);
            t.push(vec![
                d.to_string(),
                q.to_string(),
                m.to_string(),
                zeta.to_string(),
                fp.count.to_string(),
                fp.lift.to_string(),
            ]);
            r.table(t);
            Ok(r)
        }
    }
}
