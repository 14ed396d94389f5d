use gwenum_core::binom::{self, finite_corpus, identity_cases, quadratic_corpus, Binomials};
use gwenum_core::etale::EtaleAlgebra;
use gwenum_core::gw::{format_gw, parse_gw};
use gwenum_core::{gw_eq, BaseField, SquareClass};
use rayon::prelude::*;

use super::{parse_base, parse_class, parse_twists, Ctx};
use crate::args::{BinomArgs, PascalArgs, TbinomArgs, VerifyIdentitiesArgs};
use crate::error::{CliError, CliResult};
use crate::report::Report;

pub(crate) fn binom(ctx: &Ctx, a: &BinomArgs, report: &mut Report) -> CliResult<()> {
    let base = parse_base(&a.base)?;
    let alg = EtaleAlgebra::parse(base, &a.algebra)?;
    let v = binom::binom(&alg, a.j)?;
    report.value(format!("binom({alg}, {})", a.j), &v, ctx.fmt);
    Ok(())
}

pub(crate) fn tbinom(ctx: &Ctx, a: &TbinomArgs, report: &mut Report) -> CliResult<()> {
    let base = parse_base(&a.base)?;
    let alg = EtaleAlgebra::parse(base, &a.algebra)?;
    let d = parse_class(base, &a.d)?;
    let t = binom::tbinom(&alg, a.j, d)?;
    if t.square_twist {
        report.warn(format!("d = {d} is a square; the twisted binomial equals the untwisted one"));
    }
    report.value(format!("tbinom({alg}, {}, {d})", a.j), &t.value, ctx.fmt);
    Ok(())
}

fn finite_q(base: BaseField) -> CliResult<u64> {
    match base {
        BaseField::FiniteField { q } => Ok(q),
        other => Err(CliError::Usage(format!("pascal needs a finite base field, got {other}"))),
    }
}

pub(crate) fn pascal(ctx: &Ctx, a: &PascalArgs, report: &mut Report) -> CliResult<()> {
    let base = parse_base(&a.base)?;
    let q = finite_q(base)?;
    let rows = binom::pascal(q, a.nmax)?;
    for (n, row) in rows.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|v| format_gw(v, ctx.fmt)).collect();
        report.note(format!("n={n}: {}", cells.join(" | ")));
        for (j, v) in row.iter().enumerate() {
            report.value(format!("binom(F_{q}^{n}, {j})"), v, ctx.fmt);
        }
    }
    if a.check {
        let data = ctx.seed.pascal()?;
        let mut count = 0;
        let mut bad = None;
        for (j, diag) in data.diagonals.iter().enumerate() {
            for (k, text) in diag.iter().enumerate() {
                let n = j + k;
                if n > a.nmax {
                    continue;
                }
                count += 1;
                let want = parse_gw(text, base, None)?;
                if !gw_eq(&rows[n][j], &want)? && bad.is_none() {
                    bad = Some(format!(
                        "n={n} j={j}: got {}, expected {text}",
                        format_gw(&rows[n][j], ctx.fmt)
                    ));
                }
            }
        }
        report.check(format!("pascal triangle over F_{q} ({count} entries)"), bad.is_none(), bad);
    }
    if let Some(jmax) = a.twisted {
        let tw = binom::twisted_pascal(q, jmax)?;
        let cells: Vec<String> = tw.iter().map(|v| format_gw(v, ctx.fmt)).collect();
        report.note(format!("twisted j=1..{jmax}: {}", cells.join(" | ")));
        for (i, v) in tw.iter().enumerate() {
            report.value(format!("tbinom(F_{q}^{}, {}, u)", 2 * (i + 1), i + 1), v, ctx.fmt);
        }
        if a.check {
            let data = ctx.seed.twisted()?;
            let mut bad = None;
            let mut count = 0;
            for (i, text) in data.values.iter().enumerate().take(tw.len()) {
                count += 1;
                let want = parse_gw(text, base, None)?;
                if !gw_eq(&tw[i], &want)? && bad.is_none() {
                    bad = Some(format!("j={}: got {}, expected {text}", i + 1, format_gw(&tw[i], ctx.fmt)));
                }
            }
            report.check(format!("twisted values over F_{q} ({count} entries)"), bad.is_none(), bad);
        }
    }
    Ok(())
}

pub(crate) fn verify_identities(a: &VerifyIdentitiesArgs, report: &mut Report) -> CliResult<()> {
    let base = parse_base(&a.base)?;
    if a.max_degree > binom::MAX_DEGREE {
        return Err(CliError::Usage(format!("--max-degree is capped at {}", binom::MAX_DEGREE)));
    }
    let (algebras, twists): (Vec<EtaleAlgebra>, Vec<SquareClass>) = if let BaseField::FiniteField { q } = base {
        (finite_corpus(q, a.max_degree)?, parse_twists(base, &a.twists, &["u"])?)
    } else {
        let classes = if a.classes.is_empty() { vec![-1, 2, 3, 5] } else { a.classes.clone() };
        (
            quadratic_corpus(base, &classes, a.max_degree)?,
            parse_twists(base, &a.twists, &["-1"])?,
        )
    };
    let cases = identity_cases(&algebras, &twists);
    report.note(format!("{} algebras over {base}, {} cases", algebras.len(), cases.len()));
    let memo = Binomials::new();
    let results: Vec<_> = cases.par_iter().map(|c| c.run(&memo)).collect();
    let names = ["symmetry", "product", "twisted_product", "main", "useful", "lemma_step"];
    for name in names {
        let mut count = 0;
        let mut bad = None;
        for (c, r) in cases.iter().zip(&results) {
            if c.name() != name {
                continue;
            }
            count += 1;
            let ok = match r {
                Ok(ok) => *ok,
                Err(e) => {
                    if bad.is_none() {
                        bad = Some(format!("{c}: {e}"));
                    }
                    false
                }
            };
            if !ok && bad.is_none() {
                bad = Some(c.to_string());
            }
        }
        if count > 0 {
            report.check(format!("{name} ({count} cases)"), bad.is_none(), bad);
        }
    }
    Ok(())
}
