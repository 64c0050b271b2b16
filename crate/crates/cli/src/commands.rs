use std::fmt::Write as _;
use std::path::Path;

use magbrauer_core::brauer::{format_factors, phi_square_cochain, BrauerContext, RiehmContext, RiehmField};
use magbrauer_core::cohom::{trivialize, Budget, CoefficientModel, Trivialization};
use magbrauer_core::exactla::CMatrix;
use magbrauer_core::gradalg::{az_detect, az_lookup, az_row, clifford_class as class_mod8, parse_matrix, tenfold_classify, GradedAlgebra, TenfoldClass};
use magbrauer_core::magcore::spec::{build_group, magnetic_from_strs, parse_group};
use magbrauer_core::magrep::{commutant as commutant_of, MagneticRep};
use magbrauer_core::{MagError, MagneticGroup, Result};
use serde_json::{json, Value};

use crate::cache::Cache;
use crate::{AzArgs, GroupArgs, RepAction, RepArgs};

pub struct Ctx {
    pub cache: Cache,
    pub budget: Budget,
    pub jobs: usize,
}

pub struct Report {
    pub text: String,
    pub json: Value,
}

#[derive(Clone, Copy)]
pub enum Variant {
    Full,
    Prime,
    DoublePrime,
}

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| MagError::param(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| MagError::Parse {
        pos: e.column(),
        msg: format!("{} line {}: {e}", path.display(), e.line()),
    })
}

fn magnetic(g: &GroupArgs) -> Result<MagneticGroup> {
    magnetic_from_strs(g.group()?, g.phi())
}

fn matrix_json(m: &CMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| Value::Array(r.iter().map(|x| Value::String(x.to_string())).collect())).collect())
}

pub fn grbr(ctx: &Ctx, g: &GroupArgs, variant: Variant) -> Result<Report> {
    let m = magnetic(g)?;
    m.require_magnetic()?;
    let (h2, cached) = ctx.cache.cohomology(&m, CoefficientModel::QmodZTwisted, 2, &ctx.budget)?;
    let bc = BrauerContext::with_h2(&m, h2)?;
    let (s, name) = match variant {
        Variant::Full => (bc.grbr(ctx.jobs), "grbr"),
        Variant::Prime => (bc.grbr_prime(ctx.jobs), "grbr-prime"),
        Variant::DoublePrime => (bc.grbr_doubleprime(ctx.jobs), "grbr-doubleprime"),
    };
    let mut text = format!("{s}\norder: {}\ngenerators:\n", s.order);
    let mut gens = Vec::new();
    for gen in &s.generators {
        let k = bc.order(&gen.element)?;
        writeln!(text, "  {} = {}  order {k}", gen.name, gen.element).expect("string write");
        gens.push(json!({ "name": gen.name, "element": gen.element.to_json(), "order": k }));
    }
    let mut json = s.to_json();
    json["generators"] = Value::Array(gens);
    json["command"] = json!(name);
    json["group"] = json!(g.group()?);
    json["phi"] = json!(g.phi());
    json["h2_invariant_factors"] = json!(bc.h2.invariant_factors);
    json["cached"] = json!(cached);
    Ok(Report { text, json })
}

pub fn riehm(ctx: &Ctx, group: &str, field: &str) -> Result<Report> {
    let field: RiehmField = field.parse()?;
    let g = build_group(&parse_group(group)?)?;
    let plain = MagneticGroup::plain(g.clone());
    let (h2, cached) = ctx.cache.cohomology(&plain, field.model(), 2, &ctx.budget)?;
    let s = RiehmContext::with_h2(&g, field, h2)?.structure(ctx.jobs);
    let text = format!("{}\norder: {}\n", format_factors(&s.invariant_factors), s.order);
    let mut json = s.to_json();
    json["group"] = json!(group);
    json["cached"] = json!(cached);
    Ok(Report { text, json })
}

pub fn cohomology(ctx: &Ctx, g: &GroupArgs, model: &str, degree: usize) -> Result<Report> {
    let model: CoefficientModel = model.parse()?;
    let m = magnetic(g)?;
    let (h, cached) = ctx.cache.cohomology(&m, model, degree, &ctx.budget)?;
    let text = format!("{}\n", format_factors(&h.invariant_factors));
    let json = json!({
        "group": g.group()?,
        "phi": g.phi(),
        "model": model.to_string(),
        "degree": degree,
        "order": h.order(),
        "invariant_factors": h.invariant_factors,
        "generators": h.generators.iter().map(|c| c.to_json(&m)).collect::<Vec<_>>(),
        "cached": cached,
    });
    Ok(Report { text, json })
}

pub fn periodicity(ctx: &Ctx, g: &GroupArgs) -> Result<Report> {
    let m = magnetic(g)?;
    m.require_magnetic()?;
    let (h2, cached) = ctx.cache.cohomology(&m, CoefficientModel::QmodZTwisted, 2, &ctx.budget)?;
    let coords = h2.coordinates(&m, &phi_square_cochain(&m))?;
    let periodic = coords.iter().all(|&x| x == 0);
    Ok(Report {
        text: format!("4-periodic: {periodic}\n"),
        json: json!({
            "group": g.group()?,
            "phi": g.phi(),
            "four_periodic": periodic,
            "class": coords,
            "h2_invariant_factors": h2.invariant_factors,
            "cached": cached,
        }),
    })
}

fn class_json(c: TenfoldClass) -> Value {
    let (t, cc, s) = az_row(c);
    json!({ "class": c.tag(), "az": c.az_label(), "even_part": c.even_part(), "t": t, "c": cc, "s": s })
}

pub fn tenfold(file: &Path, assume_division: bool) -> Result<Report> {
    let a = GradedAlgebra::from_json(&read_json(file)?)?;
    let c = tenfold_classify(&a, assume_division)?;
    Ok(Report {
        text: format!("{} ({})\n", c.tag(), c.az_label()),
        json: class_json(c),
    })
}

pub fn clifford_class(p: usize, q: usize) -> Report {
    let k = class_mod8(p, q);
    let c = TenfoldClass::real(u64::from(k));
    let mut json = class_json(c);
    json["p"] = json!(p);
    json["q"] = json!(q);
    json["brauer_wall"] = json!(k);
    Report {
        text: format!("{k} ({}, {})\n", c.tag(), c.az_label()),
        json,
    }
}

pub fn az(a: &AzArgs) -> Result<Report> {
    let c = match &a.hamiltonian {
        Some(h) => {
            let load = |p: &Option<std::path::PathBuf>| -> Result<_> { p.as_deref().map(|p| parse_matrix(&read_json(p)?)).transpose() };
            let h = parse_matrix(&read_json(h)?)?;
            let (ut, uc, us) = (load(&a.ut)?, load(&a.uc)?, load(&a.us)?);
            az_detect(&h, ut.as_ref(), uc.as_ref(), us.as_ref(), a.tol)?
        }
        None => az_lookup(a.t.unwrap_or(0), a.c.unwrap_or(0), a.s.unwrap_or(0))?,
    };
    Ok(Report {
        text: format!("{}\n", c.az_label()),
        json: class_json(c),
    })
}

fn load_rep(r: &RepArgs) -> Result<(MagneticGroup, MagneticRep)> {
    let m = magnetic_from_strs(&r.group, &r.phi)?;
    let rep = MagneticRep::from_json(&m, &read_json(&r.rep)?)?;
    Ok((m, rep))
}

pub fn rep(ctx: &Ctx, action: RepAction) -> Result<Report> {
    match action {
        RepAction::Verify(r) => {
            let (_, rep) = load_rep(&r)?;
            let w = rep.twisted_hom_violation();
            let text = match w {
                None => "strict: true\n".to_string(),
                Some((g, h)) => format!("strict: false (witness: {g}, {h})\n"),
            };
            Ok(Report {
                text,
                json: json!({ "strict": w.is_none(), "witness": w.map(|(g, h)| [g, h]) }),
            })
        }
        RepAction::Cocycle(r) => {
            let (m, rep) = load_rep(&r)?;
            let tau = rep.extract_cocycle()?.reduced();
            let n = m.order();
            let mut text = format!("m: {}\ntrivial: {}\n", tau.m, tau.is_trivial());
            for g in 0..n {
                for h in 0..n {
                    let v = tau.value(g, h);
                    if v != 0 {
                        writeln!(text, "tau({g}, {h}) = exp(2 pi i {v}/{})", tau.m).expect("string write");
                    }
                }
            }
            let values: Vec<Vec<u64>> = (0..n).map(|g| (0..n).map(|h| tau.value(g, h)).collect()).collect();
            Ok(Report {
                text,
                json: json!({ "m": tau.m, "values": values, "trivial": tau.is_trivial() }),
            })
        }
        RepAction::Trivialize(r) => {
            let (m, rep) = load_rep(&r)?;
            let c = rep.extract_cocycle()?.to_cochain(&m);
            let (h2, cached) = ctx.cache.cohomology(&m, CoefficientModel::QmodZTwisted, 2, &ctx.budget)?;
            match trivialize(&m, &h2, &c, &ctx.budget)? {
                Trivialization::Coboundary(alpha) => {
                    let lifted = rep.rescale(&alpha)?;
                    let angles: Vec<String> = alpha.values.iter().map(|v| v.to_string()).collect();
                    Ok(Report {
                        text: format!("trivial: true\nalpha: [{}]\n", angles.join(", ")),
                        json: json!({ "trivial": true, "alpha": alpha.to_json(&m), "lifted": lifted.to_json(), "cached": cached }),
                    })
                }
                Trivialization::Nontrivial(coords) => Ok(Report {
                    text: format!("trivial: false\nclass: {coords:?} in {}\n", format_factors(&h2.invariant_factors)),
                    json: json!({ "trivial": false, "class": coords, "h2_invariant_factors": h2.invariant_factors, "cached": cached }),
                }),
            }
        }
        RepAction::Commutant(r) => {
            let (_, rep) = load_rep(&r)?;
            let c = commutant_of(&rep)?;
            let ty = c.identified_type.map(|t| t.to_string());
            Ok(Report {
                text: format!("real dimension: {}\ntype: {}\n", c.real_dimension, ty.as_deref().unwrap_or("unidentified")),
                json: json!({
                    "real_dimension": c.real_dimension,
                    "type": ty,
                    "degrees": c.degrees,
                    "basis": c.basis.iter().map(matrix_json).collect::<Vec<_>>(),
                }),
            })
        }
        RepAction::Dyson(r) => {
            let (_, rep) = load_rep(&r)?;
            let c = commutant_of(&rep)?;
            let ty = c
                .identified_type
                .ok_or_else(|| MagError::param("commutant type not identified; the representation may be reducible"))?;
            Ok(Report {
                text: format!("{ty}\n"),
                json: json!({ "type": ty.to_string(), "real_dimension": c.real_dimension, "graded": rep.grading.is_some() }),
            })
        }
    }
}

pub fn cache_inspect(ctx: &Ctx) -> Report {
    let mut text = format!("cache: {}\n", ctx.cache.dir().display());
    let mut rows = Vec::new();
    for (hash, e) in ctx.cache.entries() {
        match e {
            Some(e) => {
                let p = &e.payload;
                writeln!(
                    text,
                    "{hash}  H^{}({} elements, {})  {}  engine {}",
                    p.degree,
                    p.group_order,
                    p.model,
                    format_factors(&p.invariant_factors),
                    e.engine_version
                )
                .expect("string write");
                rows.push(json!({
                    "hash": hash,
                    "degree": p.degree,
                    "model": p.model.to_string(),
                    "group_order": p.group_order,
                    "invariant_factors": p.invariant_factors,
                    "engine_version": e.engine_version,
                    "current": e.engine_version == magbrauer_core::VERSION,
                }));
            }
            None => {
                writeln!(text, "{hash}  unreadable").expect("string write");
                rows.push(json!({ "hash": hash, "unreadable": true }));
            }
        }
    }
    Report {
        text,
        json: json!({ "dir": ctx.cache.dir().display().to_string(), "entries": rows }),
    }
}

pub fn cache_clear(ctx: &Ctx) -> Result<Report> {
    let n = ctx
        .cache
        .clear()
        .map_err(|e| MagError::param(format!("cannot clear {}: {e}", ctx.cache.dir().display())))?;
    Ok(Report {
        text: format!("removed {n} entries\n"),
        json: json!({ "removed": n }),
    })
}
