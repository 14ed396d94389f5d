use gwenum_core::binom::Binomials;
use gwenum_core::etale::EtaleAlgebra;
use gwenum_core::gw::{format_gw, parse_gw};
use gwenum_core::picard::DivisorClass;
use gwenum_core::wallcross::{
    blowup_general, quadric_general, random_profile, surgery_sides, wall_cross, InvariantTable,
    MissingPolicy, ProfileShape,
};
use gwenum_core::{gw_eq, BaseField, GwElement, SquareClass};
use rayon::prelude::*;

use super::{parse_base, parse_divisor, parse_twists, Ctx};
use crate::args::{DehnCheckArgs, TableArgs, TableKind, VerifySurgeryArgs, WallcrossArgs};
use crate::data::{CountRow, PresentationTable};
use crate::error::{CliError, CliResult};
use crate::report::Report;

fn sigma_for(table: &InvariantTable, class: &DivisorClass, spec: &str) -> CliResult<EtaleAlgebra> {
    if spec.trim() == "split" {
        Ok(table.split_sigma(class)?)
    } else {
        Ok(EtaleAlgebra::parse(table.field(), spec)?)
    }
}

pub(crate) fn wallcross(ctx: &Ctx, a: &WallcrossArgs, report: &mut Report) -> CliResult<()> {
    let mut table = ctx.seed.merged(&a.db)?;
    if a.strict {
        table.set_policy(MissingPolicy::Error);
    }
    let class = parse_divisor(&a.class)?;
    let sigma = sigma_for(&table, &class, &a.sigma)?;
    let twists = parse_twists(table.field(), &a.d, &[])?;
    for d in twists {
        let e = wall_cross(&table, &class, &sigma, d)?;
        report.value(format!("N(d={d}, {class})"), &e.value, ctx.fmt);
        for t in &e.terms {
            report.note(format!("  j={}: N({}) = {}", t.j, t.class, format_gw(&t.value, ctx.fmt)));
        }
        for w in e.warnings {
            if !report.warnings.contains(&w) {
                report.warn(w);
            }
        }
    }
    Ok(())
}

fn presentation_checks(
    ctx: &Ctx,
    report: &mut Report,
    label: &str,
    value: &GwElement,
    d: SquareClass,
    key: &[i64],
    table: &PresentationTable,
) -> CliResult<()> {
    let Some(row) = table.rows.iter().find(|r| r.key == key) else {
        return Ok(());
    };
    for (i, text) in row.presentations.iter().enumerate() {
        let want = parse_gw(text, value.field(), Some(d))?;
        let ok = gw_eq(value, &want)?;
        report.check(
            format!("{label} d={d} matches presentation {} ({})", i + 1, table.source),
            ok,
            Some(format!("computed {} vs {text}", format_gw(value, ctx.fmt))),
        );
    }
    Ok(())
}

fn rank_check(report: &mut Report, label: &str, value: &GwElement, row: &CountRow) {
    report.check(
        format!("{label} rank = GW"),
        value.rank() == row.gw,
        Some(format!("rank {} vs GW {}", value.rank(), row.gw)),
    );
}

pub(crate) fn table(ctx: &Ctx, a: &TableArgs, report: &mut Report) -> CliResult<()> {
    let q = BaseField::Rationals;
    let twists = parse_twists(q, &a.d, &[])?;
    match a.kind {
        TableKind::Quadric => {
            let counts = ctx.seed.quadric_counts()?;
            let shown = ctx.seed.quadric_presentations()?;
            let db = if a.wall_cross {
                Some(ctx.seed.quadric_split_table(a.external)?)
            } else {
                None
            };
            for d in &twists {
                report.note(format!("Q(d), d = {d}"));
                for k in 1..=a.amax {
                    let label = format!("a={k}");
                    let Some(row) = counts.rows.iter().find(|r| r.key == [k, 0]) else {
                        report.warn(format!("no seed counts for quadric row a={k}"));
                        continue;
                    };
                    let v = quadric_general(row.gw, row.w_plus, row.w_minus, *d)?;
                    report.note(format!("  {k} | {}", format_gw(&v, ctx.fmt)));
                    report.value(format!("{label} d={d}"), &v, ctx.fmt);
                    presentation_checks(ctx, report, &label, &v, *d, &[k], &shown)?;
                    rank_check(report, &format!("{label} d={d}"), &v, row);
                    if let Some(db) = &db {
                        let class = DivisorClass::new(&[k, k]);
                        let sigma = db.split_sigma(&class)?;
                        let e = wall_cross(db, &class, &sigma, *d)?;
                        if e.warnings.is_empty() {
                            let ok = gw_eq(&e.value, &v)?;
                            report.check(
                                format!("{label} d={d} wall-crossing agrees with closed form"),
                                ok,
                                Some(format!("wall-crossing gives {}", format_gw(&e.value, ctx.fmt))),
                            );
                        } else {
                            report.warn(format!(
                                "{label}: wall-crossing skipped, {} entries missing",
                                e.warnings.len()
                            ));
                        }
                    }
                }
            }
        }
        TableKind::Blowup => {
            let counts = ctx.seed.blowup_counts()?;
            let shown = ctx.seed.blowup_presentations()?;
            let keys: Vec<[i64; 2]> = if a.rows.is_empty() {
                counts.rows.iter().map(|r| r.key).collect()
            } else {
                a.rows
                    .iter()
                    .map(|s| match parse_divisor(s)?.coords() {
                        [x, y] => Ok([*x, *y]),
                        _ => Err(CliError::Usage(format!("row {s:?} must be a,b"))),
                    })
                    .collect::<CliResult<_>>()?
            };
            for d in &twists {
                report.note(format!("Bl_d(P^2), d = {d}"));
                for key in &keys {
                    let label = format!("(a,b)=({},{})", key[0], key[1]);
                    let Some(row) = counts.rows.iter().find(|r| r.key == *key) else {
                        report.warn(format!("no seed counts for blow-up row {label}"));
                        continue;
                    };
                    let v = blowup_general(row.gw, row.w_plus, row.w_minus, *d)?;
                    report.note(format!("  ({},{}) | {}", key[0], key[1], format_gw(&v, ctx.fmt)));
                    report.value(format!("{label} d={d}"), &v, ctx.fmt);
                    presentation_checks(ctx, report, &label, &v, *d, key, &shown)?;
                    rank_check(report, &format!("{label} d={d}"), &v, row);
                }
            }
        }
    }
    Ok(())
}

pub(crate) fn dehn_check(ctx: &Ctx, a: &DehnCheckArgs, report: &mut Report) -> CliResult<()> {
    let table = ctx.seed.merged(&a.db)?;
    let model = table.model().clone();
    let explicit = !a.class.is_empty();
    let classes: Vec<DivisorClass> = if explicit {
        a.class.iter().map(|c| parse_divisor(c)).collect::<CliResult<_>>()?
    } else {
        let mut v: Vec<DivisorClass> = table.entries().map(|(c, _, _)| c.clone()).collect();
        v.dedup();
        v
    };
    for class in classes {
        let twisted = model.dehn_twist(&class)?;
        let sigma = sigma_for(&table, &class, &a.sigma)?;
        // Each pair is checked once, from its smaller member.
        if !explicit && twisted < class && table.get(&twisted, &sigma)?.is_some() {
            continue;
        }
        let pair = (table.get(&class, &sigma)?, table.get(&twisted, &sigma)?);
        match pair {
            (Some(x), Some(y)) => {
                let ok = gw_eq(&x.value, &y.value)?;
                report.check(
                    format!("N{class} = N{twisted}"),
                    ok,
                    Some(format!(
                        "{} vs {}",
                        format_gw(&x.value, ctx.fmt),
                        format_gw(&y.value, ctx.fmt)
                    )),
                );
            }
            _ if explicit => {
                let missing = if pair.0.is_none() { &class } else { &twisted };
                return Err(gwenum_core::Error::MissingEntry {
                    class: missing.to_string(),
                    sigma: sigma.to_string(),
                }
                .into());
            }
            _ => report.warn(format!("{class}: twist {twisted} has no entry; skipped")),
        }
    }
    Ok(())
}

pub(crate) fn verify_surgery(a: &VerifySurgeryArgs, report: &mut Report) -> CliResult<()> {
    let base = parse_base(&a.base)?;
    if a.trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    let default: &[&str] = if base.is_finite() { &["u"] } else { &["-1", "2"] };
    let twists = parse_twists(base, &a.twists, default)?;
    let memo = Binomials::new();
    let shape = ProfileShape::default();
    let outcomes: Vec<Vec<Option<String>>> = (0..a.trials)
        .into_par_iter()
        .map(|t| {
            let seed = a.seed.wrapping_add(t);
            let prof = random_profile(base, seed, shape)?;
            twists
                .iter()
                .map(|d| {
                    let (lhs, rhs) = surgery_sides(&memo, &prof, *d)?;
                    Ok(if gw_eq(&lhs, &rhs)? {
                        None
                    } else {
                        Some(format!("seed {seed}: {lhs:?} vs {rhs:?}"))
                    })
                })
                .collect::<gwenum_core::Result<Vec<_>>>()
        })
        .collect::<gwenum_core::Result<_>>()?;
    for (i, d) in twists.iter().enumerate() {
        let bad = outcomes.iter().find_map(|o| o[i].clone());
        report.check(
            format!("surgery identity over {base}, d={d} ({} profiles)", a.trials),
            bad.is_none(),
            bad,
        );
    }
    Ok(())
}
