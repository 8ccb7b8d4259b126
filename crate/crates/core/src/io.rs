//! JSON file formats.
//!
//! | file        | shape |
//! |-------------|-------|
//! | ring.json   | `{"p", "dim", "basis", "unit", "mul"}` or `{"preset", "p", "n"?}` |
//! | module.json | `{"ring", "dim", "side": "right"\|"left", "action"}` |
//! | map.json    | `{"source", "target", "matrix"}` |
//! | morph.json  | `{"ring", "A", "B", "f", "side"?: "M"\|"M_op"}` |
//! | arseq.json  | `{"category", "ring", "left", "middle", "right", "incl", "proj", "report"?}` |
//!
//! Wherever a ring is expected, a string is accepted too: `preset:name,p=..`
//! or a path relative to the file that mentions it. Modules nested inside a
//! morph or a sequence may omit `"ring"` and inherit the enclosing one.
//! `action[i]` is the matrix by which the i-th basis vector of the ring acts
//! on column vectors (`v ↦ v·bᵢ` on a right module, `v ↦ bᵢ·v` on a left
//! one). Matrices are lists of rows. Entries may be any integers and are
//! reduced modulo `p`. Every output may carry an `"ops_log"` list, which
//! readers ignore.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::algebra::{Algebra, AlgebraTable, ObjSide, Preset};
use crate::ar::{ARSequence, Category, Corpus, Report, Term};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::module::{Module, ModuleMap, Side};
use crate::morph::MorphObject;

fn schema(what: &str, e: impl std::fmt::Display) -> Error {
    Error::Input(format!("{what}: {e}"))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TableJson {
    p: u32,
    dim: usize,
    basis: Vec<String>,
    unit: Vec<i64>,
    mul: Vec<Vec<Vec<i64>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PresetJson {
    preset: String,
    p: u32,
    n: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModuleJson {
    ring: Option<Value>,
    dim: usize,
    side: String,
    action: Vec<Vec<Vec<i64>>>,
    #[serde(default, rename = "ops_log")]
    _ops_log: Option<Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MapJson {
    source: Value,
    target: Value,
    matrix: Vec<Vec<i64>>,
    #[serde(default, rename = "ops_log")]
    _ops_log: Option<Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MorphJson {
    ring: Option<Value>,
    #[serde(rename = "A")]
    a: Value,
    #[serde(rename = "B")]
    b: Value,
    f: Vec<Vec<i64>>,
    side: Option<String>,
    #[serde(default, rename = "ops_log")]
    _ops_log: Option<Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SeqJson {
    category: String,
    ring: Option<Value>,
    left: Value,
    middle: Value,
    right: Value,
    incl: Vec<Vec<i64>>,
    proj: Vec<Vec<i64>>,
    report: Option<Value>,
    #[serde(default, rename = "ops_log")]
    _ops_log: Option<Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ReportJson {
    non_split: bool,
    left_end_local: bool,
    right_end_local: bool,
    right_almost_split_vs_corpus: bool,
    corpus_id: String,
    checked: usize,
    witness: Option<String>,
}

fn parse<T: for<'de> Deserialize<'de>>(what: &str, v: &Value) -> Result<T> {
    serde_json::from_value(v.clone()).map_err(|e| schema(what, e))
}

/// A `rows × cols` matrix from a list of rows. An empty list stands for any
/// matrix with no rows or no columns.
pub fn matrix_from_rows(p: u32, rows: usize, cols: usize, data: &[Vec<i64>], what: &str) -> Result<Mat> {
    if data.is_empty() && (rows == 0 || cols == 0) {
        return Ok(Mat::zeros(p, rows, cols));
    }
    let m = Mat::from_rows(p, data).map_err(|e| schema(what, e))?;
    if m.rows() != rows || m.cols() != cols {
        return Err(schema(what, format!("expected a {rows}×{cols} matrix, got {}×{}", m.rows(), m.cols())));
    }
    Ok(m)
}

pub fn matrix_value(m: &Mat) -> Value {
    json!(m.to_rows())
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Input(format!("{} is not valid JSON: {e}", path.display())))
}

fn parse_text(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Input(format!("not valid JSON: {e}")))
}

fn dir_of(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

/// Parses `preset:...` or a ring object into a raw table.
fn table_from_value(v: &Value) -> Result<AlgebraTable> {
    if let Some(s) = v.as_str() {
        let spec = s
            .strip_prefix("preset:")
            .ok_or_else(|| Error::Input(format!("ring string {s:?} is neither a path nor preset:...")))?;
        return Preset::parse(spec)?.table();
    }
    let obj = v.as_object().ok_or_else(|| schema("ring", "expected an object or a string"))?;
    if obj.contains_key("preset") {
        let pj: PresetJson = parse("ring", v)?;
        return Preset::from_parts(&pj.preset, pj.p, pj.n)?.table();
    }
    let t: TableJson = parse("ring", v)?;
    crate::linalg::check_prime(t.p)?;
    if t.basis.len() != t.dim {
        return Err(schema("ring", format!("dim is {} but basis has {} labels", t.dim, t.basis.len())));
    }
    let p = t.p;
    let red = |x: &[i64]| x.iter().map(|&c| crate::linalg::reduce(c, p)).collect::<Vec<u32>>();
    let table = AlgebraTable {
        p,
        labels: t.basis,
        unit: red(&t.unit),
        mul: t.mul.iter().map(|row| row.iter().map(|c| red(c)).collect()).collect(),
    };
    table.check_shape()?;
    Ok(table)
}

/// The ring object form of a table.
pub fn table_value(t: &AlgebraTable) -> Value {
    json!({
        "p": t.p,
        "dim": t.dim(),
        "basis": t.labels,
        "unit": t.unit,
        "mul": t.mul,
    })
}

/// Resolves ring references and remembers how each ring was written, so
/// that outputs refer to rings the way the inputs did.
#[derive(Default)]
pub struct Loader {
    rings: Vec<(String, Arc<Algebra>, Value)>,
}

impl Loader {
    pub fn new() -> Loader {
        Loader::default()
    }

    /// The raw table behind a ring argument (`preset:...` or a path), without
    /// checking the algebra axioms.
    pub fn ring_table(arg: &str) -> Result<AlgebraTable> {
        if arg.starts_with("preset:") {
            table_from_value(&Value::String(arg.into()))
        } else {
            let path = Path::new(arg);
            let v = read_json(path)?;
            Self::table_of(&v, &dir_of(path))
        }
    }

    fn table_of(v: &Value, dir: &Path) -> Result<AlgebraTable> {
        match v.as_str() {
            Some(s) if !s.starts_with("preset:") => {
                let path = dir.join(s);
                let inner = read_json(&path)?;
                Self::table_of(&inner, &dir_of(&path))
            }
            _ => table_from_value(v),
        }
    }

    /// A validated ring from a command-line argument.
    pub fn ring_arg(&mut self, arg: &str) -> Result<Arc<Algebra>> {
        if arg.starts_with("preset:") {
            self.ring(&Value::String(arg.into()), Path::new("."))
        } else {
            let path = Path::new(arg);
            let v = read_json(path)?;
            self.ring(&v, &dir_of(path))
        }
    }

    fn ring(&mut self, v: &Value, dir: &Path) -> Result<Arc<Algebra>> {
        let written = match v.as_str() {
            Some(s) if s.starts_with("preset:") => v.clone(),
            Some(_) => table_value(&Self::table_of(v, dir)?),
            None if v.get("preset").is_some() => v.clone(),
            None => table_value(&table_from_value(v)?),
        };
        let key = table_value(&Self::table_of(v, dir)?).to_string();
        if let Some((_, a, _)) = self.rings.iter().find(|(k, _, _)| *k == key) {
            return Ok(a.clone());
        }
        let a = Algebra::from_table(Self::table_of(v, dir)?)?;
        self.rings.push((key, a.clone(), written));
        Ok(a)
    }

    /// How to write `a` in an output: as it was read, when it was read.
    pub fn ring_value(&self, a: &Arc<Algebra>) -> Value {
        for (_, b, v) in &self.rings {
            if **a == **b {
                return v.clone();
            }
        }
        table_value(&a.to_table())
    }

    fn module_from(&mut self, v: &Value, dir: &Path, ring: Option<&Arc<Algebra>>) -> Result<Module> {
        if let Some(s) = v.as_str() {
            let path = dir.join(s);
            let inner = read_json(&path)?;
            return self.module_from(&inner, &dir_of(&path), ring);
        }
        let m: ModuleJson = parse("module", v)?;
        let base = match (&m.ring, ring) {
            (Some(r), _) => self.ring(r, dir)?,
            (None, Some(r)) => r.clone(),
            (None, None) => return Err(schema("module", "missing field `ring`")),
        };
        let side = match m.side.as_str() {
            "right" => Side::Right,
            "left" => Side::Left,
            other => return Err(schema("module", format!("side must be \"right\" or \"left\", got {other:?}"))),
        };
        let acting = if side == Side::Left { base.opposite() } else { base.clone() };
        if m.action.len() != acting.dim() {
            return Err(schema("module", format!("action needs {} matrices, got {}", acting.dim(), m.action.len())));
        }
        let p = base.p();
        let action = m
            .action
            .iter()
            .enumerate()
            .map(|(i, a)| matrix_from_rows(p, m.dim, m.dim, a, &format!("module action[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        let action = if m.dim == 0 { vec![Mat::zeros(p, 0, 0); acting.dim()] } else { action };
        Module::new(acting, side, action)
    }

    pub fn module_file(&mut self, path: &Path) -> Result<Module> {
        let v = read_json(path)?;
        self.module_from(&v, &dir_of(path), None)
    }

    pub fn map_file(&mut self, path: &Path) -> Result<ModuleMap> {
        let v = read_json(path)?;
        let dir = dir_of(path);
        let m: MapJson = parse("map", &v)?;
        let source = self.module_from(&m.source, &dir, None)?;
        let target = self.module_from(&m.target, &dir, Some(source.algebra()))?;
        let f = matrix_from_rows(source.p(), target.dim(), source.dim(), &m.matrix, "map matrix")?;
        ModuleMap::new(source, target, f)
    }

    fn morph_from(&mut self, v: &Value, dir: &Path, ring: Option<&Arc<Algebra>>) -> Result<MorphObject> {
        if let Some(s) = v.as_str() {
            let path = dir.join(s);
            let inner = read_json(&path)?;
            return self.morph_from(&inner, &dir_of(&path), ring);
        }
        let m: MorphJson = parse("morph", v)?;
        let base = match (&m.ring, ring) {
            (Some(r), _) => Some(self.ring(r, dir)?),
            (None, r) => r.cloned(),
        };
        let a = self.module_from(&m.a, dir, base.as_ref())?;
        let b = self.module_from(&m.b, dir, base.as_ref().or(Some(a.algebra())))?;
        let side = match m.side.as_deref() {
            None | Some("M") => ObjSide::M,
            Some("M_op") => ObjSide::MOp,
            Some(other) => return Err(schema("morph", format!("side must be \"M\" or \"M_op\", got {other:?}"))),
        };
        let f = matrix_from_rows(a.p(), b.dim(), a.dim(), &m.f, "morph f")?;
        MorphObject::new(&a, &b, f, side)
    }

    pub fn morph_file(&mut self, path: &Path) -> Result<MorphObject> {
        let v = read_json(path)?;
        self.morph_from(&v, &dir_of(path), None)
    }

    fn term_from(&mut self, v: &Value, dir: &Path, cat: Category, ring: Option<&Arc<Algebra>>) -> Result<Term> {
        Ok(match cat {
            Category::R => Term::Module(self.module_from(v, dir, ring)?),
            _ => Term::Morph(self.morph_from(v, dir, ring)?),
        })
    }

    pub fn sequence_file(&mut self, path: &Path) -> Result<ARSequence> {
        let v = read_json(path)?;
        let dir = dir_of(path);
        let s: SeqJson = parse("sequence", &v)?;
        let cat = Category::parse(&s.category)?;
        let ring = match &s.ring {
            Some(r) => Some(self.ring(r, &dir)?),
            None => None,
        };
        let left = self.term_from(&s.left, &dir, cat, ring.as_ref())?;
        let base = ring.unwrap_or_else(|| base_ring(&left));
        let middle = self.term_from(&s.middle, &dir, cat, Some(&base))?;
        let right = self.term_from(&s.right, &dir, cat, Some(&base))?;
        let p = base.p();
        let incl = matrix_from_rows(p, middle.dim(), left.dim(), &s.incl, "sequence incl")?;
        let proj = matrix_from_rows(p, right.dim(), middle.dim(), &s.proj, "sequence proj")?;
        let mut seq = ARSequence::new(cat, left, middle, right, incl, proj)?;
        if let Some(r) = &s.report {
            let r: ReportJson = parse("sequence report", r)?;
            seq.report = Some(Report {
                non_split: r.non_split,
                left_end_local: r.left_end_local,
                right_end_local: r.right_end_local,
                right_almost_split_vs_corpus: r.right_almost_split_vs_corpus,
                corpus_id: r.corpus_id,
                checked: r.checked,
                witness: r.witness,
            });
        }
        Ok(seq)
    }

    /// A module or an object, told apart by the presence of `"A"`.
    pub fn term_file(&mut self, path: &Path) -> Result<Term> {
        let v = read_json(path)?;
        let dir = dir_of(path);
        if v.get("A").is_some() {
            Ok(Term::Morph(self.morph_from(&v, &dir, None)?))
        } else {
            Ok(Term::Module(self.module_from(&v, &dir, None)?))
        }
    }

    /// Every `*.json` file of `dir`, in file-name order.
    pub fn corpus_dir(&mut self, dir: &Path) -> Result<Corpus> {
        let entries = fs::read_dir(dir).map_err(|e| Error::Input(format!("cannot read corpus {}: {e}", dir.display())))?;
        let mut paths: Vec<PathBuf> = entries
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        paths.sort();
        let mut items = Vec::new();
        for p in &paths {
            items.push(self.term_file(p)?);
        }
        Ok(Corpus { id: format!("dir:{}", dir.display()), items })
    }

    /// A ring from JSON text; relative paths resolve against the working
    /// directory.
    pub fn ring_str(&mut self, text: &str) -> Result<Arc<Algebra>> {
        let v = parse_text(text)?;
        self.ring(&v, Path::new("."))
    }

    pub fn module_str(&mut self, text: &str) -> Result<Module> {
        let v = parse_text(text)?;
        self.module_from(&v, Path::new("."), None)
    }

    pub fn morph_str(&mut self, text: &str) -> Result<MorphObject> {
        let v = parse_text(text)?;
        self.morph_from(&v, Path::new("."), None)
    }

    pub fn module_value(&self, m: &Module, with_ring: bool) -> Value {
        let (side, base) = match m.side() {
            Side::Right => ("right", m.algebra().clone()),
            Side::Left => ("left", m.algebra().opposite()),
        };
        let action: Vec<Value> = m.action().iter().map(matrix_value).collect();
        let mut o = Map::new();
        if with_ring {
            o.insert("ring".into(), self.ring_value(&base));
        }
        o.insert("dim".into(), json!(m.dim()));
        o.insert("side".into(), json!(side));
        o.insert("action".into(), Value::Array(action));
        Value::Object(o)
    }

    pub fn map_value(&self, f: &ModuleMap) -> Value {
        json!({
            "source": self.module_value(&f.source, true),
            "target": self.module_value(&f.target, true),
            "matrix": matrix_value(&f.matrix),
        })
    }

    pub fn morph_value(&self, x: &MorphObject, with_ring: bool) -> Value {
        let mut o = Map::new();
        if with_ring {
            o.insert("ring".into(), self.ring_value(x.base()));
        }
        o.insert("A".into(), self.module_value(&x.a(), false));
        o.insert("B".into(), self.module_value(&x.b(), false));
        o.insert("f".into(), matrix_value(x.f()));
        o.insert(
            "side".into(),
            json!(match x.side() {
                ObjSide::M => "M",
                ObjSide::MOp => "M_op",
            }),
        );
        Value::Object(o)
    }

    pub fn term_value(&self, t: &Term, with_ring: bool) -> Value {
        match t {
            Term::Module(m) => self.module_value(m, with_ring),
            Term::Morph(x) => self.morph_value(x, with_ring),
        }
    }

    pub fn sequence_value(&self, s: &ARSequence) -> Value {
        let mut o = Map::new();
        o.insert("category".into(), json!(s.category.name()));
        o.insert("ring".into(), self.ring_value(&base_ring(&s.left)));
        o.insert("left".into(), self.term_value(&s.left, false));
        o.insert("middle".into(), self.term_value(&s.middle, false));
        o.insert("right".into(), self.term_value(&s.right, false));
        o.insert("incl".into(), matrix_value(&s.incl));
        o.insert("proj".into(), matrix_value(&s.proj));
        if let Some(r) = &s.report {
            o.insert("report".into(), report_value(r));
        }
        Value::Object(o)
    }
}

pub fn report_value(r: &Report) -> Value {
    json!({
        "non_split": r.non_split,
        "left_end_local": r.left_end_local,
        "right_end_local": r.right_end_local,
        "right_almost_split_vs_corpus": r.right_almost_split_vs_corpus,
        "corpus_id": r.corpus_id,
        "checked": r.checked,
        "witness": r.witness,
    })
}

/// The ring `R` a term is built over.
pub fn base_ring(t: &Term) -> Arc<Algebra> {
    match t {
        Term::Module(m) => match m.side() {
            Side::Right => m.algebra().clone(),
            Side::Left => m.algebra().opposite(),
        },
        Term::Morph(x) => x.base().clone(),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(xs) => xs.iter().all(|x| !x.is_array() && !x.is_object()),
        _ => true,
    }
}

/// Arrays of scalars and arrays of such arrays stay on one line.
fn is_inline(v: &Value) -> bool {
    match v {
        Value::Array(xs) => xs.iter().all(is_flat),
        Value::Object(_) => false,
        _ => true,
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::Array(xs) => format!("[{}]", xs.iter().map(inline).collect::<Vec<_>>().join(", ")),
        _ => v.to_string(),
    }
}

fn write_pretty(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent + 1);
    match v {
        _ if is_inline(v) => out.push_str(&inline(v)),
        Value::Array(xs) => {
            out.push_str("[\n");
            for (i, x) in xs.iter().enumerate() {
                out.push_str(&pad);
                write_pretty(x, indent + 1, out);
                out.push_str(if i + 1 < xs.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push(']');
        }
        Value::Object(m) if m.is_empty() => out.push_str("{}"),
        Value::Object(m) => {
            out.push_str("{\n");
            for (i, (k, x)) in m.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_pretty(x, indent + 1, out);
                out.push_str(if i + 1 < m.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push('}');
        }
        _ => unreachable!("scalars are inline"),
    }
}

/// Indented JSON with sorted keys, keeping vectors and matrices on one line.
pub fn to_pretty(v: &Value) -> String {
    let mut out = String::new();
    write_pretty(v, 0, &mut out);
    out
}
