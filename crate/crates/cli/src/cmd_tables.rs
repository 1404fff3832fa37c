use anyhow::{bail, Result};
use clap::Subcommand;
use levelzero::arith::binomial;
use levelzero::langlands::{enumerate_primitive, harris_summary};
use levelzero::rep::{
    descent_table, elliptic_coefficients, ideal_rank, is_hook_set, kostka_matrix, partitions, poincare_polynomial,
    young_subgroup,
};

use crate::config::RunConfig;
use crate::report::{Report, Table, Verdict};

#[derive(Debug, Subcommand)]
pub enum TablesCmd {
    /// Young subgroups, Poincaré polynomials and ranks of the ideals H x_mu
    Hecke {
        #[arg(long)]
        n: u32,
        /// value of the Hecke parameter used for ideal ranks
        #[arg(long, default_value_t = 2)]
        t: i64,
    },
    /// Kostka matrix, or its inverse with --elliptic
    Kostka {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        elliptic: bool,
    },
    /// Permutations with a given ascent set, with hook annotations
    Descent {
        #[arg(long)]
        e: u32,
    },
    /// Elliptic parameters attached to a character of F_{q^d}^×
    Harris {
        #[arg(long)]
        theta: u64,
    },
    /// Number of f-primitive characters of F_{q^f}^×
    Primitive {
        #[arg(long)]
        f: u32,
    },
}

fn factorial(n: u32) -> u64 {
    (1..=n as u64).product()
}

pub fn run(cmd: &TablesCmd, cfg: &RunConfig) -> Result<Report> {
    match cmd {
        TablesCmd::Hecke { n, t } => {
            if !(1..=6).contains(n) {
                bail!("n={n} outside 1..=6");
            }
            let mut r = cfg.report("tables hecke");
            r.header("t", t);
            let mut tab = Table::new("hecke", &["mu", "young_order", "poincare", "ideal_rank", "multinomial"]);
            let mut ok = true;
            for mu in partitions(*n) {
                let multinomial = factorial(*n) / mu.parts().iter().map(|&k| factorial(k)).product::<u64>();
                let rank = ideal_rank(&mu, *t);
                ok &= rank as u64 == multinomial;
                tab.push(vec![
                    mu.to_string(),
                    young_subgroup(&mu).len().to_string(),
                    poincare_polynomial(&mu).to_string(),
                    rank.to_string(),
                    multinomial.to_string(),
                ]);
            }
            r.table(tab);
            r.flag("ideal-rank", "rank of H x_mu equals the index of the Young subgroup", Verdict::from_bool(ok));
            Ok(r)
        }
        TablesCmd::Kostka { n, elliptic } => {
            if !(1..=12).contains(n) {
                bail!("n={n} outside 1..=12");
            }
            let (ps, m) = if *elliptic {
                elliptic_coefficients(*n)?
            } else {
                let (ps, m) = kostka_matrix(*n);
                (ps, m)
            };
            let mut r = cfg.report(if *elliptic { "tables kostka-inverse" } else { "tables kostka" });
            let mut cols = vec!["lambda".to_string()];
            cols.extend(ps.iter().map(|p| p.to_string()));
            let mut tab = Table { name: "kostka".into(), columns: cols, rows: Vec::new() };
            for (i, l) in ps.iter().enumerate() {
                let mut row = vec![l.to_string()];
                row.extend((0..ps.len()).map(|j| m.get(i, j).to_string()));
                tab.push(row);
            }
            r.table(tab);
            Ok(r)
        }
        TablesCmd::Descent { e } => {
            let rows = descent_table(*e)?;
            let mut r = cfg.report("tables descent");
            let mut tab = Table::new("descent", &["e", "ascent_set", "count", "binomial", "hook", "count_is_binomial"]);
            let mut ok = true;
            for row in rows {
                let b = binomial(*e as u64 - 1, row.set.len() as u64);
                let hook = is_hook_set(*e, &row.set);
                ok &= (row.count == b) == hook;
                let set = format!("{{{}}}", row.set.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
                tab.push(vec![
                    e.to_string(),
                    set,
                    row.count.to_string(),
                    b.to_string(),
                    hook.to_string(),
                    (row.count == b).to_string(),
                ]);
            }
            r.table(tab);
            r.flag(
                "descent-identity",
                "the count is binomial(e-1,|I|) exactly for initial or terminal intervals",
                Verdict::from_bool(ok),
            );
            Ok(r)
        }
        TablesCmd::Harris { theta } => {
            let (d, q) = (cfg.d()? as u32, cfg.q()?);
            let rows = harris_summary(d, q, *theta)?;
            let mut r = cfg.report("tables harris");
            let mut tab = Table::new(
                "harris",
                &["d", "q", "f", "theta-exponent", "i", "degree", "I-options", "dim", "lambda_i", "LJ-sign"],
            );
            for row in &rows {
                tab.push(vec![
                    row.d.to_string(),
                    row.q.to_string(),
                    row.f.to_string(),
                    row.theta_exponent.to_string(),
                    row.i.to_string(),
                    row.degree.to_string(),
                    row.options_label(),
                    row.dim.to_string(),
                    row.weil.eigenvalue.to_string(),
                    row.lj_sign.to_string(),
                ]);
            }
            r.table(tab);
            Ok(r)
        }
        TablesCmd::Primitive { f } => {
            let q = cfg.q()?;
            let n = enumerate_primitive(*f, q)?;
            let mut r = cfg.report("tables primitive");
            let mut tab = Table::new("primitive", &["f", "q", "count"]);
            tab.push(vec![f.to_string(), q.to_string(), n.to_string()]);
            r.table(tab);
            Ok(r)
        }
    }
}
