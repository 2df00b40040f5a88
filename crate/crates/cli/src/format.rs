//! On-disk JSON formats for algebras, modules and catalogs.

use std::collections::BTreeMap;
use std::path::Path;

use relaus::algebra::Presentation;
use relaus::krull_schmidt::IndecomposableCatalog;
use relaus::module::Module;
use relaus::{Algebra, Error, Field, Matrix, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// A module as a quiver representation. Matrices are row-major, entries are
/// field elements written as strings, and an arrow `a: i -> j` is a
/// `dim(i) x dim(j)` matrix acting on row vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub algebra_digest: String,
    pub spaces: BTreeMap<String, usize>,
    pub arrows: BTreeMap<String, Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogFile {
    pub algebra_digest: String,
    pub modules: Vec<ModuleFile>,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text)
        .map_err(|e| Error::Input(format!("{what}: {e} (line {}, column {})", e.line(), e.column())))
}

pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let p: Presentation = parse(text, "algebra")?;
    p.field.validate()?;
    Ok(p)
}

pub fn read_presentation(path: &Path) -> Result<Presentation> {
    parse_presentation(&read(path)?)
}

/// Content hash of a presentation, taken over its canonical JSON form.
pub fn presentation_digest(p: &Presentation) -> String {
    let bytes = serde_json::to_vec(p).expect("presentations serialize");
    hex::encode(Sha256::digest(&bytes))
}

pub fn read_module_file(path: &Path) -> Result<ModuleFile> {
    parse(&read(path)?, "module")
}

pub fn read_catalog_file(path: &Path) -> Result<CatalogFile> {
    parse(&read(path)?, "catalog")
}

pub fn module_from_file<K: Field>(a: &Algebra<K>, file: &ModuleFile) -> Result<Module<K>> {
    if file.algebra_digest != a.digest() {
        return Err(Error::Input(format!(
            "algebra_digest: module was written for algebra {}, not {}",
            file.algebra_digest,
            a.digest()
        )));
    }
    let q = a.quiver().ok_or_else(|| Error::Unsupported("module files need a quiver presentation".into()))?;
    for v in file.spaces.keys() {
        if !q.vertices.contains(v) {
            return Err(Error::Input(format!("spaces.{v}: unknown vertex")));
        }
    }
    for name in file.arrows.keys() {
        if !q.arrows.iter().any(|ar| &ar.name == name) {
            return Err(Error::Input(format!("arrows.{name}: unknown arrow")));
        }
    }
    let dims: Vec<usize> = q.vertices.iter().map(|v| file.spaces.get(v).copied().unwrap_or(0)).collect();
    let f = a.field();
    let mut mats = Vec::with_capacity(q.arrows.len());
    for ar in &q.arrows {
        let (r, c) = (dims[ar.from], dims[ar.to]);
        let rows = match file.arrows.get(&ar.name) {
            Some(rows) => rows.clone(),
            None if r * c == 0 => vec![Vec::new(); r],
            None => return Err(Error::Input(format!("arrows.{}: missing", ar.name))),
        };
        if rows.len() != r || rows.iter().any(|row| row.len() != c) {
            return Err(Error::Input(format!("arrows.{}: expected a {r}x{c} matrix", ar.name)));
        }
        let mut data = Vec::with_capacity(r * c);
        for (i, row) in rows.iter().enumerate() {
            for (j, s) in row.iter().enumerate() {
                let x = f.parse(s).map_err(|e| Error::Input(format!("arrows.{}[{i}][{j}]: {e}", ar.name)))?;
                data.push(x);
            }
        }
        mats.push(Matrix::from_vec(f, r, c, data)?);
    }
    let m = Module::from_representation(a, &dims, &mats)?;
    m.validate()?;
    Ok(m)
}

pub fn module_to_file<K: Field>(m: &Module<K>) -> Result<ModuleFile> {
    let a = m.algebra();
    let q = a.quiver().ok_or_else(|| Error::Unsupported("module files need a quiver presentation".into()))?;
    let (dims, mats) = m.to_representation()?;
    let f = a.field();
    let spaces = q.vertices.iter().cloned().zip(dims).collect();
    let arrows = q
        .arrows
        .iter()
        .zip(&mats)
        .map(|(ar, mat)| {
            let rows = (0..mat.rows()).map(|i| (0..mat.cols()).map(|j| f.render(mat.get(i, j))).collect()).collect();
            (ar.name.clone(), rows)
        })
        .collect();
    Ok(ModuleFile { algebra_digest: a.digest().to_string(), spaces, arrows })
}

pub fn catalog_to_file<K: Field>(c: &IndecomposableCatalog<K>) -> Result<CatalogFile> {
    Ok(CatalogFile {
        algebra_digest: c.algebra.digest().to_string(),
        modules: c.modules.iter().map(module_to_file).collect::<Result<_>>()?,
    })
}

pub fn catalog_from_file<K: Field>(a: &Algebra<K>, file: &CatalogFile) -> Result<IndecomposableCatalog<K>> {
    let modules = file.modules.iter().map(|m| module_from_file(a, m)).collect::<Result<Vec<_>>>()?;
    IndecomposableCatalog::supplied(a, modules)
}
