//! Resolving command-line arguments into algebras, objects and stability
//! parameters.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use fincat::error::{Error, Result};
use fincat::format::{self, GammaSpec, StabilityFile};
use fincat::ktheory::{dual_basis_matrix, g_class, GClass, KClass};
use fincat::linalg::FieldSpec;
use fincat::presets::{preset_algebra, preset_object};
use fincat::quiver::{AlgebraPresentation, Representation};
use fincat::stability::StabilityData;
use fincat::structure::{projective, simple};

use crate::{ObjectArgs, StabilityArgs};

/// Failure to read an input file.
#[derive(Debug)]
pub struct IoFailure(pub String);

#[derive(Debug)]
pub enum CliError {
    Lib(Error),
    Io(IoFailure),
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io(IoFailure(format!("{}: {e}", path.display()))))
}

pub fn preset(name: &str) -> CliResult<Arc<AlgebraPresentation>> {
    preset_algebra(name).ok_or_else(|| CliError::Usage(format!("unknown preset `{name}`")))
}

/// Loads an algebra file, or a preset when the reference is `preset:<name>`.
pub fn load_algebra_ref(reference: &str, base: Option<&Path>) -> CliResult<Arc<AlgebraPresentation>> {
    if let Some(name) = reference.strip_prefix("preset:") {
        return preset(name);
    }
    let mut path = PathBuf::from(reference);
    if path.is_relative() {
        if let Some(b) = base {
            path = b.join(path);
        }
    }
    let text = read(&path)?;
    Ok(Arc::new(format::parse_algebra(&text)?))
}

/// The algebra selected by `--preset` or `--algebra`.
pub fn algebra(args: &ObjectArgs) -> CliResult<Option<(String, Arc<AlgebraPresentation>)>> {
    match (&args.preset, &args.algebra) {
        (Some(_), Some(_)) => Err(CliError::Usage("give either --preset or --algebra, not both".into())),
        (Some(p), None) => Ok(Some((format!("preset:{p}"), preset(p)?))),
        (None, Some(path)) => Ok(Some((path.display().to_string(), load_algebra_ref(&path.display().to_string(), None)?))),
        (None, None) => Ok(None),
    }
}

pub fn require_algebra(args: &ObjectArgs) -> CliResult<(String, Arc<AlgebraPresentation>)> {
    match algebra(args)? {
        Some(a) => Ok(a),
        None => {
            if let Some(rep) = &args.rep {
                let (r, v) = load_rep(rep)?;
                return Ok((r, v.algebra().clone()));
            }
            Err(CliError::Usage("an algebra is required: use --preset, --algebra or --rep".into()))
        }
    }
}

pub fn field(args: &ObjectArgs) -> CliResult<FieldSpec> {
    match &args.field {
        Some(f) => Ok(f.parse()?),
        None => Ok(FieldSpec::prime(2)?),
    }
}

pub fn load_rep(path: &Path) -> CliResult<(String, Representation)> {
    let text = read(path)?;
    let base = path.parent().map(Path::to_path_buf);
    let resolve = |r: &str| -> Result<Arc<AlgebraPresentation>> {
        load_algebra_ref(r, base.as_deref()).map_err(|e| match e {
            CliError::Lib(e) => e,
            CliError::Io(IoFailure(m)) | CliError::Usage(m) => Error::InvalidPresentation(m),
        })
    };
    let rf = format::parse_rep(&text, &resolve)?;
    Ok((rf.algebra_ref, rf.rep))
}

/// The object selected by `--rep` or `--object` (with `--preset`/`--algebra`).
pub fn object(args: &ObjectArgs) -> CliResult<Representation> {
    if let Some(path) = &args.rep {
        if args.object.is_some() {
            return Err(CliError::Usage("give either --rep or --object, not both".into()));
        }
        let (_, v) = load_rep(path)?;
        if let Some(f) = &args.field {
            let f: FieldSpec = f.parse()?;
            if f != v.field() {
                return Err(Error::FieldMismatch(format!("--field {f} but the file declares {}", v.field())).into());
            }
        }
        return Ok(v);
    }
    let name = args
        .object
        .as_deref()
        .ok_or_else(|| CliError::Usage("an object is required: use --rep or --object".into()))?;
    let f = field(args)?;
    if let Some(p) = &args.preset {
        if args.algebra.is_none() {
            return Ok(preset_object(p, name, f)?);
        }
    }
    let (_, alg) = require_algebra(args)?;
    let unknown = || CliError::Lib(Error::InvalidPresentation(format!("no object `{name}`; use S<vertex> or P<vertex>")));
    if let Some(v) = name.strip_prefix('S') {
        let i = alg.vertex_index(v).ok_or_else(unknown)?;
        return Ok(simple(&alg, f, i));
    }
    if let Some(v) = name.strip_prefix('P') {
        let i = alg.vertex_index(v).ok_or_else(unknown)?;
        return Ok(projective(&alg, f, i)?);
    }
    Err(unknown())
}

pub fn stability_file(args: &StabilityArgs) -> CliResult<Option<StabilityFile>> {
    match &args.stability {
        Some(p) => Ok(Some(format::parse_stability(&read(p)?)?)),
        None => Ok(None),
    }
}

/// Stability data for objects of class `alpha`; flags override the file.
pub fn stability(
    args: &StabilityArgs,
    algebra: &Arc<AlgebraPresentation>,
    field: FieldSpec,
    alpha: &GClass,
) -> CliResult<StabilityData> {
    let file = stability_file(args)?;
    let beta = match (&args.beta, &file) {
        (Some(b), _) => KClass::new(format::parse_rational_vector(b)?),
        (None, Some(f)) => f.beta.clone(),
        (None, None) => return Err(CliError::Usage("--beta is required".into())),
    };
    let gamma = match (&args.gamma, &file) {
        (Some(g), _) => format::parse_gamma(g)?,
        (None, Some(f)) => f.gamma.clone(),
        (None, None) => GammaSpec::Canonical,
    };
    if let Some(a) = file.as_ref().and_then(|f| f.alpha.as_ref()) {
        if a != alpha {
            return Err(Error::ClassMismatch {
                expected: a.to_string(),
                actual: alpha.to_string(),
            }
            .into());
        }
    }
    let pairing = dual_basis_matrix(algebra, field)?;
    let gamma = match gamma {
        GammaSpec::Canonical => pairing.canonical_gamma(alpha)?,
        GammaSpec::Explicit(g) => g,
    };
    Ok(StabilityData::new(pairing, beta, gamma, alpha.clone())?)
}

/// `--alpha` if given, else the stability file's alpha.
pub fn alpha(args: &StabilityArgs, required_for: &str) -> CliResult<GClass> {
    if let Some(a) = &args.alpha {
        return Ok(GClass::new(format::parse_int_vector(a)?));
    }
    if let Some(a) = stability_file(args)?.and_then(|f| f.alpha) {
        return Ok(a);
    }
    Err(CliError::Usage(format!("--alpha is required for `{required_for}`")))
}

pub fn object_alpha(args: &StabilityArgs, v: &Representation) -> CliResult<GClass> {
    let c = g_class(v);
    if let Some(a) = &args.alpha {
        let a = GClass::new(format::parse_int_vector(a)?);
        if a != c {
            return Err(Error::ClassMismatch {
                expected: a.to_string(),
                actual: c.to_string(),
            }
            .into());
        }
    }
    Ok(c)
}
