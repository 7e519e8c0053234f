//! Bundled surfaces.
//!
//! The catalog is a JSON document with the surface keys of a job file. An
//! entry with a `family` range repeats its point list `r` times and is
//! addressed as `name@r`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use crate::job::{from_json, PointSpec, ZSpec};
use crate::surface::SurfaceFields;

pub const BUNDLED: &str = include_str!("../data/catalog.json");

/// Environment variable naming an alternate catalog file.
pub const CATALOG_ENV: &str = "FLOPSLOPE_CATALOG";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Family {
    pub min: usize,
    pub max: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    pub model: String,
    pub boundary: Vec<i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<PointSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<ZSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mori_generators: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extra_generators: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Family>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
}

/// One concrete surface of the catalog.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Member {
    pub name: String,
    pub entry: CatalogEntry,
    pub fields: SurfaceFields,
}

impl Catalog {
    pub fn parse(text: &str) -> Result<Catalog> {
        let cat: Catalog = from_json(text)?;
        for (i, e) in cat.entries.iter().enumerate() {
            if cat.entries[..i].iter().any(|o| o.name == e.name) {
                return Err(CliError::parse(format!("/entries/{i}/name"), format!("duplicate entry `{}`", e.name)));
            }
            if let Some(f) = &e.family {
                if f.min == 0 || f.min > f.max {
                    return Err(CliError::parse(
                        format!("/entries/{i}/family"),
                        "family range must satisfy 1 <= min <= max",
                    ));
                }
            }
        }
        Ok(cat)
    }

    pub fn bundled() -> Catalog {
        Catalog::parse(BUNDLED).expect("bundled catalog parses")
    }

    /// The catalog named by `FLOPSLOPE_CATALOG`, or the bundled one.
    pub fn from_env() -> Result<Catalog> {
        match std::env::var_os(CATALOG_ENV) {
            Some(path) => Catalog::load(Path::new(&path)),
            None => Ok(Catalog::bundled()),
        }
    }

    pub fn load(path: &Path) -> Result<Catalog> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(format!("reading {}", path.display()), e))?;
        Catalog::parse(&text).map_err(|e| match e {
            CliError::Parse { pointer, message } => {
                CliError::parse(pointer, format!("in catalog {}: {message}", path.display()))
            }
            other => other,
        })
    }

    pub fn entry(&self, name: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// Resolves `name` or `name@r`.
    pub fn lookup(&self, name: &str) -> Result<Member> {
        let (base, r) = match name.split_once('@') {
            Some((b, r)) => {
                let r: usize =
                    r.parse().map_err(|_| CliError::config(format!("`{name}`: family index is not a number")))?;
                (b, Some(r))
            }
            None => (name, None),
        };
        let entry = self.entry(base).ok_or_else(|| CliError::config(format!("unknown catalog entry `{base}`")))?;
        match (&entry.family, r) {
            (None, None) => Ok(member(entry, None)),
            (None, Some(_)) => Err(CliError::config(format!("catalog entry `{base}` is not a family"))),
            (Some(f), None) => Err(CliError::config(format!(
                "catalog entry `{base}` is a family; use {base}@r with {} <= r <= {}",
                f.min, f.max
            ))),
            (Some(f), Some(r)) if r < f.min || r > f.max => {
                Err(CliError::config(format!("`{name}`: r must lie between {} and {}", f.min, f.max)))
            }
            (Some(_), Some(r)) => Ok(member(entry, Some(r))),
        }
    }

    /// Members of one entry: the entry itself, or every family member.
    pub fn members_of(&self, name: &str) -> Result<Vec<Member>> {
        match self.entry(name) {
            Some(e) => Ok(expand(e)),
            None => Ok(vec![self.lookup(name)?]),
        }
    }

    /// Every concrete surface, families expanded.
    pub fn members(&self) -> Vec<Member> {
        self.entries.iter().flat_map(expand).collect()
    }
}

fn expand(e: &CatalogEntry) -> Vec<Member> {
    match &e.family {
        None => vec![member(e, None)],
        Some(f) => (f.min..=f.max).map(|r| member(e, Some(r))).collect(),
    }
}

fn member(entry: &CatalogEntry, r: Option<usize>) -> Member {
    let points = match r {
        None => entry.points.clone(),
        Some(r) => entry.points.iter().cloned().cycle().take(r * entry.points.len()).collect(),
    };
    let name = match r {
        None => entry.name.clone(),
        Some(r) => format!("{}@{r}", entry.name),
    };
    let fields = SurfaceFields {
        model: entry.model.clone(),
        boundary: entry.boundary.clone(),
        points,
        z: entry.z.clone(),
        mori_generators: entry.mori_generators.clone(),
        extra_generators: entry.extra_generators.clone(),
    };
    Member { name, entry: entry.clone(), fields }
}

fn list_of<T: std::fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    let parts: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// Plain-text dump of one member: lattice, canonical class, generators and
/// the configured `Z`.
pub fn describe(m: &Member) -> Result<String> {
    use flopslope_core::surface::amp_region;
    let built = crate::surface::build(&m.fields)?;
    let pair = &built.pair;
    let lat = pair.lattice();
    let mut s = String::new();
    let mut line = |k: &str, v: String| s.push_str(&format!("{k}: {v}\n"));
    line("name", m.name.clone());
    line("description", m.entry.description.clone());
    line("model", m.fields.model.clone());
    line("points", m.fields.points.len().to_string());
    line("basis", list_of(lat.labels()));
    line("gram", list_of(lat.gram().iter().map(list_of)));
    line("canonical", pair.canonical().to_string());
    line("boundary", pair.boundary().to_string());
    line("boundary_squared", pair.boundary().square().to_string());
    line("mori_generators", list_of(pair.mori_generators()));
    let z_kind = if built.z_is_boundary { " (boundary)" } else { "" };
    line("z", format!("{}{z_kind}", built.z));
    line("z_squared", built.z.square().to_string());
    line("k_plus_c_squared", pair.k_plus_c_squared().to_string());
    let amp = amp_region(pair)?;
    line("ample_range", amp.interval.map_or_else(|| "empty".to_string(), |i| i.to_string()));
    Ok(s)
}
