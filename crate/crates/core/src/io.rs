//! File formats: spaces (JSON and sectioned CSV), meshes, graphs, curves,
//! τ tables and CSV matrices.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::causal::{FiniteLorentzianSpace, Relation};
use crate::cauchy::CauchyGraph;
use crate::curves::{DiscreteCausalCurve, EndBehavior};
use crate::error::{Error, Result};
use crate::model::{HyperbolicMesh, LorentzianModel, Vec3};
use crate::timefn::{format_extended, parse_extended, TimeFunctionValues};

/// Hyperboloid tolerance for mesh vertices read from files.
pub const MESH_TOLERANCE: f64 = 1e-9;

/// A number or one of the spellings `+inf` / `-inf`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
enum Extended {
    Number(f64),
    Text(String),
}

impl Extended {
    fn from_f64(v: f64) -> Self {
        if v.is_finite() {
            Extended::Number(v)
        } else {
            Extended::Text(format_extended(v))
        }
    }

    fn value(&self) -> Result<f64> {
        match self {
            Extended::Number(v) => Ok(*v),
            Extended::Text(s) => parse_extended(s).ok_or_else(|| Error::input(format!("not a number: {s:?}"))),
        }
    }
}

/// A square matrix given as rows or flattened row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
enum Grid<T> {
    Rows(Vec<Vec<T>>),
    Flat(Vec<T>),
}

impl<T: Clone> Grid<T> {
    fn rows(n: usize, flat: &[T]) -> Self {
        Grid::Rows(flat.chunks(n.max(1)).map(<[T]>::to_vec).collect())
    }

    fn flatten(self, n: usize, name: &str) -> Result<Vec<T>> {
        let flat = match self {
            Grid::Flat(v) => v,
            Grid::Rows(rows) => {
                if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                    return Err(Error::input(format!("{name} must be {n} rows of {n} entries")));
                }
                rows.into_iter().flatten().collect()
            }
        };
        if flat.len() != n * n {
            return Err(Error::input(format!("{name} has {} entries, expected {}", flat.len(), n * n)));
        }
        Ok(flat)
    }
}

/// `0`/`1` or `false`/`true`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
enum Bit {
    Int(u8),
    Bool(bool),
}

impl Bit {
    fn value(self) -> Result<bool> {
        match self {
            Bit::Int(0) | Bit::Bool(false) => Ok(false),
            Bit::Int(1) | Bit::Bool(true) => Ok(true),
            Bit::Int(_) => Err(Error::input("causal entries must be 0 or 1")),
        }
    }
}

/// `dist` and `causal` are square matrices in label order, as nested rows or
/// flattened row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpaceFile {
    pub labels: Vec<String>,
    dist: Grid<Extended>,
    causal: Grid<Bit>,
}

impl SpaceFile {
    pub fn from_space(space: &FiniteLorentzianSpace) -> Self {
        let n = space.len();
        let dist: Vec<Extended> = space.dist_row_major().iter().map(|&d| Extended::from_f64(d)).collect();
        let causal: Vec<Bit> = space.causal_relation().bits().iter().map(|&b| Bit::Int(u8::from(b))).collect();
        SpaceFile {
            labels: space.labels().to_vec(),
            dist: Grid::rows(n, &dist),
            causal: Grid::rows(n, &causal),
        }
    }

    pub fn into_space(self) -> Result<FiniteLorentzianSpace> {
        let n = self.labels.len();
        let bits = self.causal.flatten(n, "causal")?.into_iter().map(Bit::value).collect::<Result<Vec<bool>>>()?;
        let relation = Relation::from_bits(n, bits).ok_or_else(|| Error::input("malformed causal matrix"))?;
        let dist = self.dist.flatten(n, "dist")?.iter().map(Extended::value).collect::<Result<Vec<f64>>>()?;
        FiniteLorentzianSpace::new(self.labels, dist, relation)
    }
}

fn read_to_string(path: &Path) -> Result<String> {
    let mut s = String::new();
    fs::File::open(path)
        .map_err(|e| Error::input(format!("{}: {e}", path.display())))?
        .read_to_string(&mut s)?;
    Ok(s)
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    serde_json::from_str(&read_to_string(path)?).map_err(|e| Error::input(format!("{}: {e}", path.display())))
}

/// Pretty JSON followed by a newline.
pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    let mut out = serde_json::to_vec_pretty(value)?;
    out.push(b'\n');
    fs::write(path, out)?;
    Ok(())
}

pub fn space_to_json(space: &FiniteLorentzianSpace) -> Result<String> {
    Ok(serde_json::to_string(&SpaceFile::from_space(space))?)
}

pub fn space_from_json(json: &str) -> Result<FiniteLorentzianSpace> {
    let file: SpaceFile = serde_json::from_str(json).map_err(|e| Error::input(e.to_string()))?;
    file.into_space()
}

/// Two labelled square matrices in `# dist` and `# causal` sections.
pub fn space_to_csv(space: &FiniteLorentzianSpace) -> Result<String> {
    let n = space.len();
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    let header: Vec<&str> = std::iter::once("").chain(space.labels().iter().map(String::as_str)).collect();
    w.write_record(["# dist"]).map_err(csv_error)?;
    w.write_record(&header).map_err(csv_error)?;
    for i in 0..n {
        let row = std::iter::once(space.labels()[i].clone()).chain((0..n).map(|j| format_extended(space.dist(i, j))));
        w.write_record(row).map_err(csv_error)?;
    }
    w.write_record(["# causal"]).map_err(csv_error)?;
    w.write_record(&header).map_err(csv_error)?;
    for i in 0..n {
        let row = std::iter::once(space.labels()[i].clone())
            .chain((0..n).map(|j| if space.causal(i, j) { "1".into() } else { "0".to_string() }));
        w.write_record(row).map_err(csv_error)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::input(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn csv_error(e: csv::Error) -> Error {
    Error::input(format!("csv: {e}"))
}

pub fn space_from_csv(text: &str) -> Result<FiniteLorentzianSpace> {
    let mut r = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut sections: Vec<(String, Vec<csv::StringRecord>)> = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(csv_error)?;
        let first = rec.get(0).unwrap_or("");
        if let Some(name) = first.strip_prefix('#') {
            sections.push((name.trim().to_ascii_lowercase(), Vec::new()));
        } else if rec.iter().any(|f| !f.is_empty()) {
            match sections.last_mut() {
                Some((_, rows)) => rows.push(rec),
                None => return Err(Error::input("csv data before the first section marker")),
            }
        }
    }
    let section = |name: &str| {
        sections
            .iter()
            .find(|(s, _)| s == name)
            .map(|(_, rows)| rows)
            .ok_or_else(|| Error::input(format!("missing section # {name}")))
    };
    let parse_matrix = |rows: &Vec<csv::StringRecord>| -> Result<(Vec<String>, Vec<Vec<String>>)> {
        let (header, body) = rows.split_first().ok_or_else(|| Error::input("empty section"))?;
        let labels: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
        if body.len() != labels.len() {
            return Err(Error::input("matrix must have one row per label"));
        }
        let mut cells = Vec::with_capacity(body.len());
        for (row, label) in body.iter().zip(&labels) {
            if row.get(0) != Some(label.as_str()) || row.len() != labels.len() + 1 {
                return Err(Error::input(format!("malformed row for label {label}")));
            }
            cells.push(row.iter().skip(1).map(str::to_string).collect());
        }
        Ok((labels, cells))
    };
    let (labels, dist) = parse_matrix(section("dist")?)?;
    let (causal_labels, causal) = parse_matrix(section("causal")?)?;
    if labels != causal_labels {
        return Err(Error::input("dist and causal sections list different labels"));
    }
    let dist: Vec<Vec<f64>> = dist
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| parse_extended(c).ok_or_else(|| Error::input(format!("not a number: {c:?}"))))
                .collect()
        })
        .collect::<Result<_>>()?;
    let causal: Vec<Vec<bool>> = causal
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| match c.as_str() {
                    "1" => Ok(true),
                    "0" => Ok(false),
                    _ => Err(Error::input(format!("causal entry {c:?} is not 0 or 1"))),
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    FiniteLorentzianSpace::from_matrices(labels, &dist, &causal)
}

/// Reads a space from `.json` or `.csv`.
pub fn read_space(path: &Path) -> Result<FiniteLorentzianSpace> {
    let text = read_to_string(path)?;
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) {
        space_from_csv(&text)
    } else {
        space_from_json(&text)
    }
}

pub fn write_space(path: &Path, space: &FiniteLorentzianSpace) -> Result<()> {
    let text = if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) {
        space_to_csv(space)?
    } else {
        space_to_json(space)?
    };
    fs::write(path, text)?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeshFile {
    pub vertices: Vec<Vec3>,
    pub edges: Vec<(usize, usize)>,
}

impl MeshFile {
    pub fn from_mesh(mesh: &HyperbolicMesh) -> Self {
        MeshFile {
            vertices: mesh.vertices().to_vec(),
            edges: mesh.edge_pairs(),
        }
    }

    pub fn into_mesh(self) -> Result<HyperbolicMesh> {
        HyperbolicMesh::new(self.vertices, &self.edges, MESH_TOLERANCE)
    }
}

pub fn read_mesh(path: &Path) -> Result<HyperbolicMesh> {
    read_json::<MeshFile>(path)?.into_mesh()
}

pub fn write_mesh(path: &Path, mesh: &HyperbolicMesh) -> Result<()> {
    write_json(path, &MeshFile::from_mesh(mesh))
}

/// A mesh given by a path (relative to the referring file) or inline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MeshRef {
    Path(PathBuf),
    Inline(MeshFile),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphFile {
    pub mesh: MeshRef,
    pub f: Vec<f64>,
}

impl GraphFile {
    pub fn read(path: &Path) -> Result<Self> {
        read_json(path)
    }

    pub fn from_graph(g: &CauchyGraph, mesh: MeshRef) -> Self {
        GraphFile { mesh, f: g.f().to_vec() }
    }

    /// The mesh path resolved against `base`, for path references.
    pub fn mesh_path(&self, base: &Path) -> Option<PathBuf> {
        match &self.mesh {
            MeshRef::Path(p) if p.is_relative() => Some(base.join(p)),
            MeshRef::Path(p) => Some(p.clone()),
            MeshRef::Inline(_) => None,
        }
    }

    /// Loads the referenced mesh; `base` is the directory of the graph file.
    pub fn load_mesh(&self, base: &Path) -> Result<HyperbolicMesh> {
        match (&self.mesh, self.mesh_path(base)) {
            (_, Some(p)) => read_mesh(&p),
            (MeshRef::Inline(m), None) => m.clone().into_mesh(),
            (MeshRef::Path(_), None) => unreachable!("path references always resolve"),
        }
    }
}

pub fn write_graph(path: &Path, g: &CauchyGraph, mesh: MeshRef) -> Result<()> {
    write_json(path, &GraphFile::from_graph(g, mesh))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveFile<P> {
    pub samples: Vec<(f64, P)>,
    pub past: EndBehavior<P>,
    pub future: EndBehavior<P>,
    pub timelike: bool,
}

impl<P: Clone> CurveFile<P> {
    pub fn from_curve(c: &DiscreteCausalCurve<P>) -> Self {
        CurveFile {
            samples: c.samples().to_vec(),
            past: c.past().clone(),
            future: c.future().clone(),
            timelike: c.is_timelike(),
        }
    }

    /// Validates the samples against `model`.
    pub fn into_curve<M: LorentzianModel<Point = P>>(self, model: &M) -> Result<DiscreteCausalCurve<P>> {
        DiscreteCausalCurve::new(model, self.samples, self.past, self.future, self.timelike)
    }
}

pub fn read_curve<P: Clone + DeserializeOwned>(path: &Path) -> Result<CurveFile<P>> {
    read_json(path)
}

/// `label,f,g,tau` with infinite values spelled `-inf` / `+inf`.
pub fn tau_csv(tf: &TimeFunctionValues) -> String {
    let mut out = String::from("label,f,g,tau\n");
    for i in 0..tf.len() {
        out.push_str(&format!(
            "{},{},{},{}\n",
            csv_field(&tf.labels[i]),
            format_extended(tf.f_val[i]),
            format_extended(tf.g_val[i]),
            format_extended(tf.tau[i])
        ));
    }
    out
}

/// Parses a τ table back into `(label, f, g, tau)` rows.
pub fn parse_tau_csv(text: &str) -> Result<Vec<(String, f64, f64, f64)>> {
    let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(csv_error)?;
        let num = |i: usize| {
            rec.get(i)
                .and_then(parse_extended)
                .ok_or_else(|| Error::input(format!("bad number in column {i}")))
        };
        rows.push((rec.get(0).unwrap_or("").to_string(), num(1)?, num(2)?, num(3)?));
    }
    Ok(rows)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// A labelled square matrix as CSV with an empty corner cell.
pub fn matrix_csv(labels: &[String], matrix: &[Vec<f64>]) -> String {
    let mut out = String::new();
    for l in labels {
        out.push(',');
        out.push_str(&csv_field(l));
    }
    out.push('\n');
    for (l, row) in labels.iter().zip(matrix) {
        out.push_str(&csv_field(l));
        for v in row {
            out.push(',');
            out.push_str(&format_extended(*v));
        }
        out.push('\n');
    }
    out
}

/// `curve_id,graph_id,crossings` rows.
pub fn ensemble_csv(rows: &[(usize, usize, usize)]) -> String {
    let mut out = String::from("curve_id,graph_id,crossings\n");
    for (c, g, k) in rows {
        out.push_str(&format!("{c},{g},{k}\n"));
    }
    out
}

/// Writes `text` to `path`, creating parent directories.
pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent)?;
    }
    fs::File::create(path)?.write_all(text.as_bytes())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::causal::{fixtures, random_weighted_poset};
    use crate::model::ConeModel;
    use crate::timefn::build_time_function;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn space_json_round_trip_is_bit_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..5 {
            let s = random_weighted_poset(12, 0.3, &mut rng);
            let back = space_from_json(&space_to_json(&s).unwrap()).unwrap();
            assert_eq!(back, s);
            assert!(back.dist_row_major().iter().zip(s.dist_row_major()).all(|(a, b)| a.to_bits() == b.to_bits()));
        }
        let json = r#"{"labels":["a","b"],"dist":[0,"+inf",0,0],"causal":[1,1,0,1]}"#;
        assert_eq!(space_from_json(json).unwrap().dist(0, 1), f64::INFINITY);
    }

    #[test]
    fn space_csv_round_trip() {
        let s = fixtures::four_point_diamond();
        let csv = space_to_csv(&s).unwrap();
        assert!(csv.starts_with("# dist\n,u,x,y,v\n"));
        assert_eq!(space_from_csv(&csv).unwrap(), s);
        assert!(space_from_csv("# dist\n,a\na,0\n").is_err());
    }

    #[test]
    fn malformed_spaces_are_input_errors() {
        assert!(space_from_json(r#"{"labels":["a"],"dist":[0],"causal":[2]}"#).is_err());
        assert!(space_from_json(r#"{"labels":["a"],"dist":[0,1],"causal":[1]}"#).is_err());
        let nested = r#"{"labels":["a","b"],"dist":[[0,1],[0,0]],"causal":[[true,true],[false,true]]}"#;
        assert_eq!(space_from_json(nested).unwrap().dist(0, 1), 1.0);
        assert!(space_from_json(r#"{"labels":["a","b"],"dist":[[0,1,2],[0,0]],"causal":[1,1,0,1]}"#).is_err());
        assert!(space_from_json("{").is_err());
    }

    #[test]
    fn mesh_and_graph_files() {
        let dir = std::env::temp_dir().join(format!("lc-io-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let mesh = HyperbolicMesh::disk(1.0, 1).unwrap();
        write_mesh(&dir.join("disk.json"), &mesh).unwrap();
        let back = read_mesh(&dir.join("disk.json")).unwrap();
        assert_eq!(back.vertices(), mesh.vertices());
        assert_eq!(back.edge_pairs(), mesh.edge_pairs());

        let g = CauchyGraph::constant(ConeModel::new(back), 1.5).unwrap();
        write_graph(&dir.join("g.json"), &g, MeshRef::Path("disk.json".into())).unwrap();
        let file = GraphFile::read(&dir.join("g.json")).unwrap();
        assert_eq!(file.f, vec![1.5; mesh.len()]);
        assert_eq!(file.load_mesh(&dir).unwrap().len(), mesh.len());
        let inline: GraphFile = serde_json::from_str(&format!(
            r#"{{"mesh":{},"f":[1]}}"#,
            serde_json::to_string(&MeshFile::from_mesh(&mesh)).unwrap()
        ))
        .unwrap();
        assert!(matches!(inline.mesh, MeshRef::Inline(_)));
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn curve_file_validates_on_load() {
        use crate::model::{Event, Minkowski2};
        let json = r#"{"samples":[[0,{"t":0,"x":0}],[1,{"t":1,"x":0.5}]],"past":"attainedEndpoint","future":{"approachesBoundary":{"t":2,"x":0}},"timelike":true}"#;
        let file: CurveFile<Event> = serde_json::from_str(json).unwrap();
        assert!(file.clone().into_curve(&Minkowski2).is_ok());
        let bad = r#"{"samples":[[0,{"t":0,"x":0}],[1,{"t":1,"x":2}]],"past":"attainedEndpoint","future":"escapesToInfinity","timelike":false}"#;
        let file: CurveFile<Event> = serde_json::from_str(bad).unwrap();
        assert!(file.into_curve(&Minkowski2).is_err());
    }

    #[test]
    fn tau_table() {
        let tf = build_time_function(&fixtures::three_chain(), None).unwrap();
        let csv = tau_csv(&tf);
        assert!(csv.lines().nth(1).unwrap().ends_with(",-inf"));
        assert!(csv.lines().nth(3).unwrap().ends_with(",+inf"));
        let rows = parse_tau_csv(&csv).unwrap();
        assert_eq!(rows[1].0, "b");
        assert_eq!(rows[1].3, tf.tau[1]);
    }

    #[test]
    fn matrix_and_ensemble_csv() {
        let m = matrix_csv(&["g0".into(), "g1".into()], &[vec![0.0, 0.5], vec![0.5, 0.0]]);
        assert_eq!(m, ",g0,g1\ng0,0.0,0.5\ng1,0.5,0.0\n");
        assert_eq!(ensemble_csv(&[(0, 1, 1)]), "curve_id,graph_id,crossings\n0,1,1\n");
    }
}
