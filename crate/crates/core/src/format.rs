//! Flat text formats for algebras, representations and stability data.
//!
//! All three formats are line based. Blank lines and anything after `#` are
//! ignored. Each remaining line is `key: value`.
//!
//! Algebra files:
//!
//! ```text
//! vertices: 1 2
//! arrow a: 1 -> 2
//! arrow b: 2 -> 1
//! relation: a b
//! relation: a b - 1/2 c d
//! ```
//!
//! Words compose left to right: `a b` is arrow `a` followed by arrow `b`.
//! A relation is a sum of terms separated by standalone `+` / `-` tokens; a
//! term is an optional rational coefficient followed by arrow names.
//!
//! Representation files:
//!
//! ```text
//! algebra: preset:sl2block      # or a path to an algebra file
//! field: F2                     # Q or F<p>
//! dims: 1 2
//! map a: 1; 0                   # dims[target] rows separated by `;`
//! map b: 0 1
//! ```
//!
//! Arrows without a `map` line are zero. Stability files hold `beta:`,
//! `gamma:` (a vector or the word `canonical`) and optionally `alpha:`.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, ParseError, Result};
use crate::ktheory::{GClass, KClass};
use crate::linalg::{format_rational, parse_rational, FieldSpec, Matrix};
use crate::quiver::{AlgebraPresentation, Arrow, PathTerm, Relation, Representation};

#[derive(Clone, Debug)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

struct Line<'a> {
    number: usize,
    key: Token<'a>,
    value_column: usize,
    value: &'a str,
}

impl<'a> Line<'a> {
    fn err(&self, column: usize, message: impl Into<String>) -> Error {
        Error::Parse(ParseError::new(self.number, column, message))
    }

    fn tokens(&self) -> Vec<Token<'a>> {
        tokenize(self.value, self.value_column)
    }
}

fn tokenize(s: &str, offset: usize) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in s.char_indices() {
        let sep = c.is_whitespace() || c == ',';
        match (sep, start) {
            (true, Some(st)) => {
                out.push(Token {
                    text: &s[st..i],
                    column: offset + s[..st].chars().count(),
                });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(st) = start {
        out.push(Token {
            text: &s[st..],
            column: offset + s[..st].chars().count(),
        });
    }
    out
}

fn lines(text: &str) -> Result<Vec<Line<'_>>> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let number = n + 1;
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let Some(colon) = body.find(':') else {
            let col = body.chars().take_while(|c| c.is_whitespace()).count() + 1;
            return Err(Error::Parse(ParseError::new(number, col, "expected `key: value`")));
        };
        let key_part = &body[..colon];
        let lead = key_part.chars().take_while(|c| c.is_whitespace()).count();
        let key_text = key_part.trim();
        let value = &body[colon + 1..];
        out.push(Line {
            number,
            key: Token {
                text: key_text,
                column: lead + 1,
            },
            value_column: body[..colon + 1].chars().count() + 1,
            value,
        });
    }
    Ok(out)
}

fn parse_rat_token(line: &Line<'_>, tok: &Token<'_>) -> Result<BigRational> {
    parse_rational(tok.text).ok_or_else(|| line.err(tok.column, format!("expected a rational number, found `{}`", tok.text)))
}

fn parse_int_token(line: &Line<'_>, tok: &Token<'_>) -> Result<i64> {
    tok.text
        .parse()
        .map_err(|_| line.err(tok.column, format!("expected an integer, found `{}`", tok.text)))
}

fn parse_usize_token(line: &Line<'_>, tok: &Token<'_>) -> Result<usize> {
    tok.text
        .parse()
        .map_err(|_| line.err(tok.column, format!("expected a dimension, found `{}`", tok.text)))
}

fn ensure_once(line: &Line<'_>, seen: &mut bool) -> Result<()> {
    if *seen {
        return Err(line.err(line.key.column, format!("duplicate `{}` line", line.key.text)));
    }
    *seen = true;
    Ok(())
}

/// Parses a comma or whitespace separated list of rationals.
pub fn parse_rational_vector(s: &str) -> Result<Vec<BigRational>> {
    tokenize(s, 1)
        .iter()
        .map(|t| {
            parse_rational(t.text)
                .ok_or_else(|| Error::Parse(ParseError::new(1, t.column, format!("expected a rational number, found `{}`", t.text))))
        })
        .collect()
}

/// Parses a comma or whitespace separated list of integers.
pub fn parse_int_vector(s: &str) -> Result<Vec<i64>> {
    tokenize(s, 1)
        .iter()
        .map(|t| {
            t.text
                .parse()
                .map_err(|_| Error::Parse(ParseError::new(1, t.column, format!("expected an integer, found `{}`", t.text))))
        })
        .collect()
}

pub fn parse_algebra(text: &str) -> Result<AlgebraPresentation> {
    let lines = lines(text)?;
    let mut vertices: Option<Vec<String>> = None;
    let mut arrows: Vec<Arrow> = Vec::new();
    let mut relations: Vec<Relation> = Vec::new();
    let mut path_cap: Option<usize> = None;
    let mut seen_vertices = false;
    for line in &lines {
        let key = tokenize(line.key.text, line.key.column);
        match key.first().map(|t| t.text) {
            Some("vertices") if key.len() == 1 => {
                ensure_once(line, &mut seen_vertices)?;
                let toks = line.tokens();
                if toks.is_empty() {
                    return Err(line.err(line.value_column, "expected at least one vertex"));
                }
                let mut names: Vec<String> = Vec::new();
                for t in &toks {
                    if names.iter().any(|n| n == t.text) {
                        return Err(line.err(t.column, format!("duplicate vertex `{}`", t.text)));
                    }
                    names.push(t.text.to_string());
                }
                vertices = Some(names);
            }
            Some("arrow") if key.len() == 2 => {
                let verts = vertices
                    .as_ref()
                    .ok_or_else(|| line.err(line.key.column, "`vertices` must come before arrows"))?;
                let name = key[1].text;
                if arrows.iter().any(|a| a.name == name) {
                    return Err(line.err(key[1].column, format!("duplicate arrow `{name}`")));
                }
                let toks = line.tokens();
                if toks.len() != 3 || toks[1].text != "->" {
                    return Err(line.err(line.value_column, "expected `source -> target`"));
                }
                let vidx = |t: &Token<'_>| {
                    verts
                        .iter()
                        .position(|v| v == t.text)
                        .ok_or_else(|| line.err(t.column, format!("unknown vertex `{}`", t.text)))
                };
                arrows.push(Arrow {
                    name: name.to_string(),
                    source: vidx(&toks[0])?,
                    target: vidx(&toks[2])?,
                });
            }
            Some("relation") if key.len() == 1 => {
                relations.push(parse_relation(line, &arrows)?);
            }
            Some("path_cap") if key.len() == 1 => {
                let toks = line.tokens();
                if toks.len() != 1 {
                    return Err(line.err(line.value_column, "expected one integer"));
                }
                path_cap = Some(parse_usize_token(line, &toks[0])?);
            }
            _ => return Err(line.err(line.key.column, format!("unknown key `{}`", line.key.text))),
        }
    }
    let vertices = vertices.ok_or_else(|| Error::Parse(ParseError::new(1, 1, "missing `vertices` line")))?;
    AlgebraPresentation::with_path_cap(vertices, arrows, relations, path_cap.unwrap_or(crate::quiver::DEFAULT_PATH_CAP))
}

fn parse_relation(line: &Line<'_>, arrows: &[Arrow]) -> Result<Relation> {
    let toks = line.tokens();
    if toks.is_empty() {
        return Err(line.err(line.value_column, "empty relation"));
    }
    let mut terms = Vec::new();
    let mut i = 0;
    let mut first = true;
    while i < toks.len() {
        let mut sign = BigRational::one();
        match toks[i].text {
            "+" => i += 1,
            "-" => {
                sign = -sign;
                i += 1;
            }
            _ if !first => return Err(line.err(toks[i].column, "expected `+` or `-` between terms")),
            _ => {}
        }
        first = false;
        let term_col = toks.get(i).map_or(line.value_column, |t| t.column);
        let mut coeff = sign;
        if let Some(t) = toks.get(i) {
            if let Some(c) = parse_rational(t.text) {
                coeff *= c;
                i += 1;
            }
        }
        let mut word = Vec::new();
        while let Some(t) = toks.get(i) {
            if t.text == "+" || t.text == "-" {
                break;
            }
            let a = arrows
                .iter()
                .position(|a| a.name == t.text)
                .ok_or_else(|| line.err(t.column, format!("unknown arrow `{}`", t.text)))?;
            word.push(a);
            i += 1;
        }
        if word.is_empty() {
            return Err(line.err(term_col, "term has no arrows"));
        }
        terms.push(PathTerm { coeff, word });
    }
    Ok(Relation::new(terms))
}

pub fn write_algebra(alg: &AlgebraPresentation) -> String {
    let mut out = format!("vertices: {}\n", alg.vertices().join(" "));
    for a in alg.arrows() {
        out += &format!("arrow {}: {} -> {}\n", a.name, alg.vertices()[a.source], alg.vertices()[a.target]);
    }
    for r in alg.relations() {
        let mut s = String::new();
        for (k, t) in r.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            if neg {
                s += if k == 0 { "- " } else { " - " };
            } else if k > 0 {
                s += " + ";
            }
            let c = t.coeff.abs();
            if !c.is_one() {
                s += &format_rational(&c);
                s += " ";
            }
            let names: Vec<&str> = t.word.iter().map(|&a| alg.arrows()[a].name.as_str()).collect();
            s += &names.join(" ");
        }
        out += &format!("relation: {s}\n");
    }
    if alg.path_cap() != crate::quiver::DEFAULT_PATH_CAP {
        out += &format!("path_cap: {}\n", alg.path_cap());
    }
    out
}

/// A parsed representation file; `algebra_ref` is the raw `algebra:` value.
#[derive(Clone, Debug)]
pub struct RepFile {
    pub algebra_ref: String,
    pub rep: Representation,
}

/// Parses a representation file. `resolve` maps the `algebra:` reference to
/// a presentation; its errors are passed through unchanged.
pub fn parse_rep(text: &str, resolve: &dyn Fn(&str) -> Result<Arc<AlgebraPresentation>>) -> Result<RepFile> {
    let lines = lines(text)?;
    let mut algebra: Option<(String, Arc<AlgebraPresentation>)> = None;
    let mut field: Option<FieldSpec> = None;
    let mut dims: Option<Vec<usize>> = None;
    let mut maps: Vec<Option<Matrix>> = Vec::new();
    let (mut seen_alg, mut seen_field, mut seen_dims) = (false, false, false);
    for line in &lines {
        let key = tokenize(line.key.text, line.key.column);
        match key.first().map(|t| t.text) {
            Some("algebra") if key.len() == 1 => {
                ensure_once(line, &mut seen_alg)?;
                let r = line.value.trim();
                if r.is_empty() {
                    return Err(line.err(line.value_column, "expected an algebra reference"));
                }
                let alg = resolve(r)?;
                maps = vec![None; alg.arrows().len()];
                algebra = Some((r.to_string(), alg));
            }
            Some("field") if key.len() == 1 => {
                ensure_once(line, &mut seen_field)?;
                let toks = line.tokens();
                if toks.len() != 1 {
                    return Err(line.err(line.value_column, "expected `Q` or `F<p>`"));
                }
                field = Some(toks[0].text.parse().map_err(|e: Error| match e {
                    Error::InvalidField(_) => line.err(toks[0].column, format!("invalid field `{}`", toks[0].text)),
                    other => other,
                })?);
            }
            Some("dims") if key.len() == 1 => {
                ensure_once(line, &mut seen_dims)?;
                let (_, alg) = algebra
                    .as_ref()
                    .ok_or_else(|| line.err(line.key.column, "`algebra` must come before `dims`"))?;
                let toks = line.tokens();
                if toks.len() != alg.vertex_count() {
                    return Err(line.err(
                        line.value_column,
                        format!("expected {} dimensions, found {}", alg.vertex_count(), toks.len()),
                    ));
                }
                dims = Some(toks.iter().map(|t| parse_usize_token(line, t)).collect::<Result<_>>()?);
            }
            Some("map") if key.len() == 2 => {
                let (_, alg) = algebra
                    .as_ref()
                    .ok_or_else(|| line.err(line.key.column, "`algebra` must come before maps"))?;
                let f = field.ok_or_else(|| line.err(line.key.column, "`field` must come before maps"))?;
                let d = dims
                    .as_ref()
                    .ok_or_else(|| line.err(line.key.column, "`dims` must come before maps"))?;
                let a = alg
                    .arrow_index(key[1].text)
                    .ok_or_else(|| line.err(key[1].column, format!("unknown arrow `{}`", key[1].text)))?;
                if maps[a].is_some() {
                    return Err(line.err(key[1].column, format!("duplicate map for `{}`", key[1].text)));
                }
                let arrow = &alg.arrows()[a];
                maps[a] = Some(parse_matrix(line, f, d[arrow.target], d[arrow.source])?);
            }
            _ => return Err(line.err(line.key.column, format!("unknown key `{}`", line.key.text))),
        }
    }
    let missing = |what: &str| Error::Parse(ParseError::new(lines.last().map_or(1, |l| l.number), 1, format!("missing `{what}` line")));
    let (algebra_ref, alg) = algebra.ok_or_else(|| missing("algebra"))?;
    let field = field.ok_or_else(|| missing("field"))?;
    let dims = dims.ok_or_else(|| missing("dims"))?;
    let maps: Vec<Matrix> = maps
        .into_iter()
        .zip(alg.arrows())
        .map(|(m, a)| m.unwrap_or_else(|| Matrix::zeros(field, dims[a.target], dims[a.source])))
        .collect();
    let rep = Representation::new(alg, field, dims, maps)?;
    Ok(RepFile { algebra_ref, rep })
}

fn parse_matrix(line: &Line<'_>, field: FieldSpec, rows: usize, cols: usize) -> Result<Matrix> {
    let value = line.value;
    if rows * cols == 0 {
        if !value.trim().is_empty() {
            return Err(line.err(line.value_column, format!("expected an empty {rows}x{cols} matrix")));
        }
        return Ok(Matrix::zeros(field, rows, cols));
    }
    let chunks: Vec<&str> = value.split(';').collect();
    if chunks.len() != rows {
        return Err(line.err(line.value_column, format!("expected {rows} rows, found {}", chunks.len())));
    }
    let mut entries = Vec::with_capacity(rows * cols);
    let mut offset = 0;
    for (r, chunk) in chunks.iter().enumerate() {
        let col0 = line.value_column + value[..offset].chars().count();
        offset += chunk.len() + 1;
        let toks = tokenize(chunk, col0);
        if toks.len() != cols {
            return Err(line.err(col0, format!("expected {cols} entries in row {}, found {}", r + 1, toks.len())));
        }
        for t in &toks {
            let q = parse_rat_token(line, t)?;
            let s = field
                .from_rational(&q)
                .map_err(|_| line.err(t.column, format!("`{}` is not an element of {field}", t.text)))?;
            entries.push(s);
        }
    }
    Matrix::new(field, rows, cols, entries)
}

pub fn write_rep(rep: &Representation, algebra_ref: &str) -> String {
    let alg = rep.algebra();
    let dims: Vec<String> = rep.dims().iter().map(|d| d.to_string()).collect();
    let mut out = format!("algebra: {algebra_ref}\nfield: {}\ndims: {}\n", rep.field(), dims.join(" "));
    for (a, m) in alg.arrows().iter().zip(rep.maps()) {
        if m.rows() * m.cols() == 0 {
            continue;
        }
        out += &format!("map {}: {}\n", a.name, m);
    }
    out
}

/// gamma as given in a stability file or on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GammaSpec {
    Canonical,
    Explicit(KClass),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityFile {
    pub beta: KClass,
    pub gamma: GammaSpec,
    pub alpha: Option<GClass>,
}

pub fn parse_gamma(s: &str) -> Result<GammaSpec> {
    if s.trim() == "canonical" {
        Ok(GammaSpec::Canonical)
    } else {
        Ok(GammaSpec::Explicit(KClass::new(parse_rational_vector(s)?)))
    }
}

pub fn parse_stability(text: &str) -> Result<StabilityFile> {
    let lines = lines(text)?;
    let mut beta = None;
    let mut gamma = None;
    let mut alpha = None;
    let (mut sb, mut sg, mut sa) = (false, false, false);
    for line in &lines {
        let toks = line.tokens();
        match line.key.text {
            "beta" => {
                ensure_once(line, &mut sb)?;
                beta = Some(KClass::new(toks.iter().map(|t| parse_rat_token(line, t)).collect::<Result<_>>()?));
            }
            "gamma" => {
                ensure_once(line, &mut sg)?;
                gamma = Some(if toks.len() == 1 && toks[0].text == "canonical" {
                    GammaSpec::Canonical
                } else {
                    GammaSpec::Explicit(KClass::new(toks.iter().map(|t| parse_rat_token(line, t)).collect::<Result<_>>()?))
                });
            }
            "alpha" => {
                ensure_once(line, &mut sa)?;
                alpha = Some(GClass::new(toks.iter().map(|t| parse_int_token(line, t)).collect::<Result<_>>()?));
            }
            _ => return Err(line.err(line.key.column, format!("unknown key `{}`", line.key.text))),
        }
    }
    let last = lines.last().map_or(1, |l| l.number);
    let beta = beta.ok_or_else(|| Error::Parse(ParseError::new(last, 1, "missing `beta` line")))?;
    let gamma = gamma.unwrap_or(GammaSpec::Canonical);
    if let GammaSpec::Explicit(g) = &gamma {
        if g.len() != beta.len() {
            return Err(Error::IndexMismatch {
                expected: beta.len(),
                actual: g.len(),
            });
        }
        if !g.is_nonnegative() {
            return Err(Error::NegativeGamma);
        }
    }
    if let Some(a) = &alpha {
        if a.len() != beta.len() {
            return Err(Error::IndexMismatch {
                expected: beta.len(),
                actual: a.len(),
            });
        }
    }
    Ok(StabilityFile { beta, gamma, alpha })
}

pub fn write_stability(s: &StabilityFile) -> String {
    let vec = |v: &[BigRational]| v.iter().map(format_rational).collect::<Vec<_>>().join(" ");
    let mut out = format!("beta: {}\n", vec(s.beta.coeffs()));
    match &s.gamma {
        GammaSpec::Canonical => out += "gamma: canonical\n",
        GammaSpec::Explicit(g) => out += &format!("gamma: {}\n", vec(g.coeffs())),
    }
    if let Some(a) = &s.alpha {
        let v: Vec<String> = a.coeffs().iter().map(|x| x.to_string()).collect();
        out += &format!("alpha: {}\n", v.join(" "));
    }
    out
}
