use gwenum_core::picard::SurfaceModel;

use super::parse_divisor;
use crate::args::LatticeArgs;
use crate::error::CliResult;
use crate::report::Report;

pub(crate) fn lattice(a: &LatticeArgs, report: &mut Report) -> CliResult<()> {
    let mut model = SurfaceModel::parse(&a.model)?;
    if let Some(g) = &a.gamma {
        model = model.with_gamma(parse_divisor(g)?)?;
    }
    let lat = model.lattice();
    report.note(format!(
        "model {}: rank {}, K = {}, det {}",
        model.name(),
        lat.rank(),
        lat.canonical(),
        lat.determinant()
    ));
    if let Ok(g) = model.gamma() {
        report.note(format!("gamma = {g}"));
    }
    if let Some(pair) = &a.dot {
        let d1 = parse_divisor(&pair[0])?;
        let d2 = parse_divisor(&pair[1])?;
        report.note(format!("{d1} . {d2} = {}", model.dot(&d1, &d2)?));
    }
    for c in &a.class {
        let d = parse_divisor(c)?;
        let mut line = format!(
            "{d}: D^2 = {}, n_points = {}, p_a = {}",
            model.dot(&d, &d)?,
            model.n_points(&d)?,
            model.adjunction_genus(&d)?
        );
        if model.gamma().is_ok() {
            line.push_str(&format!(", dehn = {}", model.dehn_twist(&d)?));
            match model.j_range(&d)? {
                Some((lo, hi)) => line.push_str(&format!(", j in [{lo}, {hi}]")),
                None => line.push_str(", j range empty"),
            }
        }
        report.note(line);
    }
    if let Some(c) = &a.phi {
        let d = parse_divisor(c)?;
        let pairs = model.phi_fiber(&d, a.l)?;
        let target = d.add_scaled(model.gamma()?, -a.l);
        report.note(format!("fiber over {target}: {} pairs", pairs.len()));
        for p in pairs {
            let (x, y) = p.bidegree;
            report.note(format!("  (D0 - {}E, ({x}, {y})) -> {}", p.shift, model.phi1(&d, &p)?));
        }
    }
    if a.perp {
        let basis: Vec<String> = model.perp_basis()?.iter().map(|b| b.to_string()).collect();
        report.note(format!("gamma-perp basis: {}", basis.join(", ")));
    }
    Ok(())
}
