use gwenum_core::gw::parse_gw;
use gwenum_core::gw_eq;

use super::{parse_base, parse_class, Ctx};
use crate::args::{GwArgs, GwOp};
use crate::error::CliResult;
use crate::report::Report;

pub(crate) fn gw(ctx: &Ctx, a: &GwArgs, report: &mut Report) -> CliResult<()> {
    let base = parse_base(&a.base)?;
    let d = a.d.as_deref().map(|s| parse_class(base, s)).transpose()?;
    let parse = |s: &str| parse_gw(s, base, d);
    match &a.op {
        GwOp::Eq { x, y } => {
            let (u, v) = (parse(x)?, parse(y)?);
            let eq = gw_eq(&u, &v)?;
            report.value("x", &u, ctx.fmt);
            report.value("y", &v, ctx.fmt);
            report.note(eq.to_string());
        }
        GwOp::Show { x } => {
            let u = parse(x)?;
            report.value("x", &u, ctx.fmt);
            let inv = &report.values[0].invariants;
            let mut line = format!("rank {}, det {}", inv.rank, inv.det_class);
            if let Some(s) = inv.signature {
                line.push_str(&format!(", signature {s}"));
            }
            if let Some(h) = &inv.hasse {
                let parts: Vec<String> = h.iter().map(|(p, e)| format!("{p}:{e}")).collect();
                line.push_str(&format!(", hasse {}", parts.join(" ")));
            }
            report.note(line);
        }
        GwOp::Add { x, y } => report.value("x + y", &(&parse(x)? + &parse(y)?), ctx.fmt),
        GwOp::Sub { x, y } => report.value("x - y", &(&parse(x)? - &parse(y)?), ctx.fmt),
        GwOp::Mul { x, y } => report.value("x * y", &(&parse(x)? * &parse(y)?), ctx.fmt),
    }
    Ok(())
}
