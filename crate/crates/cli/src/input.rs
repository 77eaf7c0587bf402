//! Parsing of group references, subgroup lists, intervals, series and
//! zigzag legs from the command line.

use std::path::Path;

use serde::Deserialize;

use noether::group::{builtin, FiniteGroup, GroupForm, GroupMorphism};
use noether::series::{validate_series, SubnormalSeries};
use noether::zigzag::{Leg, LegDirection};
use noether::{Ambient, Error, Interval, ObjectId, Result};

/// A path to a group file, or a built-in name with or without `builtin:`.
pub fn load_group(spec: &str) -> Result<FiniteGroup> {
    if spec.starts_with("builtin:") {
        return builtin(spec);
    }
    if Path::new(spec).exists() {
        return FiniteGroup::load(spec);
    }
    builtin(spec).map_err(|_| Error::Validation(format!("'{spec}' is neither a file nor a built-in group")))
}

pub fn register(form: &GroupForm, spec: &str) -> Result<ObjectId> {
    form.register(load_group(spec)?)
}

/// Inline JSON when the argument starts with `[` or `{`, otherwise a file.
pub fn json_arg<T: for<'de> Deserialize<'de>>(arg: &str, what: &str) -> Result<T> {
    let trimmed = arg.trim_start();
    let (text, origin) = if trimmed.starts_with('[') || trimmed.starts_with('{') {
        (arg.to_string(), "inline argument".to_string())
    } else {
        let text = std::fs::read_to_string(arg).map_err(|e| Error::Io(format!("{arg}: {e}")))?;
        (text, arg.to_string())
    };
    serde_json::from_str(&text).map_err(|e| {
        Error::Validation(format!("{what} ({origin}), line {} column {}: {e}", e.line(), e.column()))
    })
}

pub fn subgroup(form: &GroupForm, object: ObjectId, elements: &[usize]) -> Result<usize> {
    Ok(form.subobject(object, elements)?.id)
}

/// `[[lo elements], [hi elements]]`.
pub fn interval(form: &GroupForm, object: ObjectId, arg: &str) -> Result<Interval> {
    let [lo, hi]: [Vec<usize>; 2] = json_arg(arg, "interval")?;
    Ok(Interval::new(subgroup(form, object, &lo)?, subgroup(form, object, &hi)?))
}

#[derive(Deserialize)]
struct SeriesFile {
    group: String,
    terms: Vec<Vec<usize>>,
}

pub fn series(form: &GroupForm, arg: &str) -> Result<SubnormalSeries> {
    let file: SeriesFile = json_arg(arg, "series")?;
    let object = register(form, &file.group)?;
    let amb = Ambient::new(form, object)?;
    let ids = file.terms.iter().map(|t| subgroup(form, object, t)).collect::<Result<Vec<_>>>()?;
    validate_series(&amb, &ids)
}

#[derive(Deserialize)]
#[serde(rename_all = "lowercase")]
enum HomSpec {
    /// Embedding of a subgroup of `of` (default: the chased group).
    Embed { subgroup: Vec<usize>, of: Option<String> },
    /// Projection of `of` at a normal subgroup.
    Project { normal: Vec<usize>, of: Option<String> },
    /// An explicit homomorphism given by its element map.
    Map { from: String, to: String, images: Vec<usize> },
}

#[derive(Deserialize)]
struct LegSpec {
    hom: HomSpec,
    dir: LegDirection,
}

pub fn legs(form: &GroupForm, default: &str, arg: &str) -> Result<Vec<Leg<GroupMorphism>>> {
    use noether::Form;
    let specs: Vec<LegSpec> = json_arg(arg, "zigzag")?;
    specs
        .into_iter()
        .enumerate()
        .map(|(i, spec)| {
            let context = |e: Error| Error::Validation(format!("leg {}: {e}", i + 1));
            let morphism = match spec.hom {
                HomSpec::Embed { subgroup, of } => {
                    let o = register(form, of.as_deref().unwrap_or(default)).map_err(context)?;
                    let x = form.subobject(o, &subgroup).map_err(context)?;
                    form.embedding(x)?.ok_or_else(|| context(Error::Domain("no embedding".into())))?
                }
                HomSpec::Project { normal, of } => {
                    let o = register(form, of.as_deref().unwrap_or(default)).map_err(context)?;
                    let x = form.subobject(o, &normal).map_err(context)?;
                    form.projection(x)?
                        .ok_or_else(|| context(Error::Domain(format!("{normal:?} is not a normal subgroup"))))?
                }
                HomSpec::Map { from, to, images } => {
                    let (d, c) = (register(form, &from).map_err(context)?, register(form, &to).map_err(context)?);
                    form.hom(d, c, &images).map_err(context)?
                }
            };
            Ok(Leg { morphism, direction: spec.dir })
        })
        .collect()
}
