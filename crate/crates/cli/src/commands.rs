//! One function per subcommand, each returning its records.

use std::collections::BTreeSet;

use fincat::census::{automorphism_count, closed_points, cover_check, enumerate_reps, theta_strata, IsoClassCatalog};
use fincat::format;
use fincat::ktheory::{dual_basis_matrix, g_class, minimal_cover_vector, pairing_object, GClass, KClass};
use fincat::presets::{preset_algebra, preset_objects, PRESET_NAMES};
use fincat::stability::{filtration_enumerate_max, hn_filtration, is_semistable, SearchConfig, StabilityData};
use fincat::structure::jordan_holder;
use serde_json::{json, Value};

use crate::input::{self, CliError, CliResult};
use crate::output::{self, class, kclass, rat, subrep, Output};
use crate::{Command, ObjectArgs, StabilityArgs};

pub fn run(cmd: &Command, cfg: &SearchConfig) -> CliResult<Output> {
    let records = match cmd {
        Command::Presets => presets(),
        Command::Validate { obj } => validate(obj)?,
        Command::Export { obj } => return export(obj).map(Output::Text),
        Command::Pairing { obj, stab } => pairing(obj, stab)?,
        Command::Jh { obj } => jh(obj)?,
        Command::Slope { obj, stab } => slope(obj, stab)?,
        Command::Ss { obj, stab } => ss(obj, stab, cfg)?,
        Command::Hn { obj, stab } => hn(obj, stab, cfg)?,
        Command::Mu { obj, stab, weight_bound } => mu(obj, stab, *weight_bound, cfg)?,
        Command::Census { obj, stab, orbits } => census(obj, stab, *orbits, cfg)?,
        Command::Strata { obj, stab } => strata(obj, stab, cfg)?,
        Command::Cover { obj, stab } => cover(obj, stab, cfg)?,
        Command::ClosedPoints { obj, alphas } => closed(obj, alphas)?,
    };
    Ok(Output::Records(records))
}

fn presets() -> Vec<Value> {
    PRESET_NAMES
        .iter()
        .map(|&name| {
            let a = preset_algebra(name).expect("preset exists");
            json!({
                "preset": name,
                "vertices": a.vertices(),
                "arrows": a.arrows().iter().map(|x| format!("{}: {} -> {}", x.name, a.vertices()[x.source], a.vertices()[x.target])).collect::<Vec<_>>(),
                "relations": a.relations().len(),
                "objects": preset_objects(name),
            })
        })
        .collect()
}

fn validate(obj: &ObjectArgs) -> CliResult<Vec<Value>> {
    let f = input::field(obj)?;
    let mut records = Vec::new();
    if let Some((r, a)) = input::algebra(obj)? {
        let basis = a.path_basis(f)?;
        records.push(json!({
            "algebra": r,
            "valid": true,
            "vertices": a.vertex_count(),
            "arrows": a.arrows().len(),
            "relations": a.relations().len(),
            "dim": basis.dim(),
            "nilpotency": basis.nilpotency(),
            "field": f.to_string(),
        }));
    }
    if obj.rep.is_some() || obj.object.is_some() {
        let v = input::object(obj)?;
        v.validate()?;
        records.push(json!({
            "representation": true,
            "valid": true,
            "class": class(&g_class(&v)),
            "field": v.field().to_string(),
        }));
    }
    if records.is_empty() {
        return Err(CliError::Usage("nothing to validate: use --preset, --algebra or --rep".into()));
    }
    Ok(records)
}

fn export(obj: &ObjectArgs) -> CliResult<String> {
    if obj.rep.is_some() || obj.object.is_some() {
        let v = input::object(obj)?;
        let reference = match (&obj.rep, input::algebra(obj)?) {
            (Some(path), _) => input::load_rep(path)?.0,
            (None, Some((r, _))) => r,
            (None, None) => unreachable!("object() requires an algebra"),
        };
        return Ok(format::write_rep(&v, &reference));
    }
    let (_, a) = input::require_algebra(obj)?;
    Ok(format::write_algebra(&a))
}

fn pairing(obj: &ObjectArgs, stab: &StabilityArgs) -> CliResult<Vec<Value>> {
    let (_, a) = input::require_algebra(obj)?;
    let f = input::field(obj)?;
    let m = dual_basis_matrix(&a, f)?;
    let mut records = vec![json!({
        "pairing_matrix": m.entries().iter().map(|row| row.iter().map(rat).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "tau": m.taus().iter().map(rat).collect::<Vec<_>>(),
        "vertices": a.vertices(),
    })];
    if obj.rep.is_some() || obj.object.is_some() {
        let v = input::object(obj)?;
        let beta = match &stab.beta {
            Some(b) => KClass::new(format::parse_rational_vector(b)?),
            None => return Err(CliError::Usage("--beta is required to pair with an object".into())),
        };
        let value = pairing_object(&beta, &v)?;
        records.push(json!({
            "beta": kclass(&beta),
            "class": class(&g_class(&v)),
            "pairing": rat(&value),
        }));
    }
    Ok(records)
}

fn jh(obj: &ObjectArgs) -> CliResult<Vec<Value>> {
    let v = input::object(obj)?;
    let names = v.algebra().vertices().to_vec();
    let data = jordan_holder(&v);
    Ok(vec![json!({
        "length": data.length,
        "factors": data.factors.iter().map(|&i| names[i].clone()).collect::<Vec<_>>(),
        "gr": class(&fincat::structure::gr(&v)),
        "chain": data.chain.iter().map(|e| e.dims()).collect::<Vec<_>>(),
    })])
}

fn object_and_stability(obj: &ObjectArgs, stab: &StabilityArgs) -> CliResult<(fincat::quiver::Representation, StabilityData)> {
    let v = input::object(obj)?;
    let alpha = input::object_alpha(stab, &v)?;
    let sd = input::stability(stab, v.algebra(), v.field(), &alpha)?;
    Ok((v, sd))
}

fn stability_fields(sd: &StabilityData) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("beta".into(), kclass(sd.beta()));
    m.insert("gamma".into(), kclass(sd.gamma()));
    m.insert("class".into(), class(sd.alpha()));
    m
}

fn slope(obj: &ObjectArgs, stab: &StabilityArgs) -> CliResult<Vec<Value>> {
    let (v, sd) = object_and_stability(obj, stab)?;
    let mut m = stability_fields(&sd);
    m.insert("slope".into(), rat(&sd.slope(&v)?));
    Ok(vec![Value::Object(m)])
}

fn ss(obj: &ObjectArgs, stab: &StabilityArgs, cfg: &SearchConfig) -> CliResult<Vec<Value>> {
    let (v, sd) = object_and_stability(obj, stab)?;
    let (semistable, cert) = is_semistable(&sd, &v, cfg)?;
    let mut m = stability_fields(&sd);
    m.insert("slope".into(), rat(&sd.slope(&v)?));
    m.insert("semistable".into(), json!(semistable));
    let (d, ds) = match cert {
        Some(e) => (subrep(&e), rat(&sd.slope_of_class(&e.class())?)),
        None => (Value::Null, Value::Null),
    };
    m.insert("destabilizer".into(), d);
    m.insert("destabilizer_slope".into(), ds);
    Ok(vec![Value::Object(m)])
}

fn hn(obj: &ObjectArgs, stab: &StabilityArgs, cfg: &SearchConfig) -> CliResult<Vec<Value>> {
    let (v, sd) = object_and_stability(obj, stab)?;
    let h = hn_filtration(&sd, &v, cfg)?;
    let mut m = stability_fields(&sd);
    m.insert("semistable".into(), json!(h.is_semistable_type()));
    m.insert("steps".into(), Value::Array(h.steps().iter().map(subrep).collect()));
    m.insert(
        "hn_type".into(),
        Value::Array(h.hn_type().iter().map(|(c, s)| json!({"class": class(c), "slope": rat(s)})).collect()),
    );
    Ok(vec![Value::Object(m)])
}

fn mu(obj: &ObjectArgs, stab: &StabilityArgs, bound: i64, cfg: &SearchConfig) -> CliResult<Vec<Value>> {
    let (v, sd) = object_and_stability(obj, stab)?;
    let (f, value) = filtration_enumerate_max(&sd, &v, bound, cfg)?;
    let mut m = stability_fields(&sd);
    m.insert("weight_bound".into(), json!(bound));
    m.insert("weights".into(), json!(f.weights()));
    m.insert("steps".into(), Value::Array(f.steps().iter().map(subrep).collect()));
    m.insert("numerator".into(), rat(&value.numerator));
    m.insert("norm_sq".into(), rat(&value.norm_sq));
    m.insert("mu_signed_square".into(), rat(&value.signed_square()));
    m.insert("positive".into(), json!(value.is_positive()));
    Ok(vec![Value::Object(m)])
}

fn catalog(obj: &ObjectArgs, stab: &StabilityArgs, orbits: bool, cmd: &str, cfg: &SearchConfig) -> CliResult<IsoClassCatalog> {
    let (_, a) = input::require_algebra(obj)?;
    let f = input::field(obj)?;
    let alpha = input::alpha(stab, cmd)?;
    Ok(enumerate_reps(&a, &alpha, f, orbits, cfg)?)
}

fn has_stability(stab: &StabilityArgs) -> bool {
    stab.beta.is_some() || stab.stability.is_some()
}

fn census(obj: &ObjectArgs, stab: &StabilityArgs, orbits: bool, cfg: &SearchConfig) -> CliResult<Vec<Value>> {
    let cat = catalog(obj, stab, orbits, "census", cfg)?;
    let sd = if has_stability(stab) {
        Some(input::stability(stab, &cat.algebra, cat.field, &cat.alpha)?)
    } else {
        None
    };
    let semisimple: BTreeSet<usize> = cat.semisimple_indices().into_iter().collect();
    let mut records = Vec::new();
    let mut semistable_count = 0usize;
    for (i, v) in cat.representatives.iter().enumerate() {
        let mut m = serde_json::Map::new();
        m.insert("record".into(), json!("class"));
        m.insert("index".into(), json!(i));
        m.insert("representative".into(), output::rep(v));
        m.insert("semisimple".into(), json!(semisimple.contains(&i)));
        m.insert("automorphisms".into(), json!(automorphism_count(v, cfg)?.to_string()));
        if let Some(o) = &cat.orbit_sizes {
            m.insert("orbit_size".into(), json!(o[i].to_string()));
        }
        if let Some(sd) = &sd {
            let ss = v.is_zero() || is_semistable(sd, v, cfg)?.0;
            semistable_count += usize::from(ss);
            m.insert("semistable".into(), json!(ss));
        }
        records.push(Value::Object(m));
    }
    let mut summary = serde_json::Map::new();
    summary.insert("record".into(), json!("summary"));
    summary.insert("class".into(), class(&cat.alpha));
    summary.insert("field".into(), json!(cat.field.to_string()));
    summary.insert("classes".into(), json!(cat.len()));
    summary.insert("valid_tuples".into(), json!(cat.valid_tuples.to_string()));
    if let Some(c) = cat.orbits_complete() {
        summary.insert("orbits_complete".into(), json!(c));
    }
    if let Some(sd) = &sd {
        summary.insert("beta".into(), kclass(sd.beta()));
        summary.insert("gamma".into(), kclass(sd.gamma()));
        summary.insert("semistable".into(), json!(semistable_count));
    }
    records.push(Value::Object(summary));
    Ok(records)
}

fn strata(obj: &ObjectArgs, stab: &StabilityArgs, cfg: &SearchConfig) -> CliResult<Vec<Value>> {
    let cat = catalog(obj, stab, false, "strata", cfg)?;
    let sd = input::stability(stab, &cat.algebra, cat.field, &cat.alpha)?;
    let report = theta_strata(&cat, &sd, cfg)?;
    let mut records: Vec<Value> = report
        .strata
        .iter()
        .map(|s| {
            json!({
                "record": "stratum",
                "hn_type": s.hn_type.iter().map(|(c, sl)| json!({"class": class(c), "slope": rat(sl)})).collect::<Vec<_>>(),
                "semistable": s.is_semistable(),
                "members": s.members,
                "representatives": s.members.iter().map(|&i| output::rep(&cat.representatives[i])).collect::<Vec<_>>(),
            })
        })
        .collect();
    records.push(json!({
        "record": "summary",
        "class": class(&cat.alpha),
        "beta": kclass(sd.beta()),
        "gamma": kclass(sd.gamma()),
        "strata": report.strata.len(),
        "semistable_stratum": report.semistable,
        "closed_point": report.closed_point,
    }));
    Ok(records)
}

fn cover(obj: &ObjectArgs, stab: &StabilityArgs, cfg: &SearchConfig) -> CliResult<Vec<Value>> {
    let cat = catalog(obj, stab, false, "cover", cfg)?;
    let names = cat.algebra.vertices().to_vec();
    let vector: Vec<Value> = minimal_cover_vector(&cat.alpha)?
        .into_iter()
        .map(|(j, n)| json!({"vertex": names[j], "multiplicity": n}))
        .collect();
    let ok = cover_check(&cat, cfg)?;
    Ok(vec![json!({
        "class": class(&cat.alpha),
        "cover": vector,
        "classes": cat.len(),
        "surjective": ok,
    })])
}

fn closed(obj: &ObjectArgs, alphas: &[String]) -> CliResult<Vec<Value>> {
    let (_, a) = input::require_algebra(obj)?;
    let f = input::field(obj)?;
    let classes = alphas
        .iter()
        .map(|s| Ok(GClass::new(format::parse_int_vector(s)?)))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(closed_points(&a, f, &classes)?
        .into_iter()
        .map(|(c, v)| json!({"class": class(&c), "representative": output::rep(&v)}))
        .collect())
}
