//! JSON file formats. Rationals are quoted strings `"p"` or `"p/q"`, basis
//! indices in keys are 1-based, and unknown fields are rejected.

use std::fmt;

use rbprelie::complexes::cochain_keys;
use rbprelie::deformations::{GaugeSeries, TruncatedDeformation};
use rbprelie::exactla::{format_rational, is_zero_vector, parse_rational};
use rbprelie::extensions::ExtensionData;
use rbprelie::{
    BilinearMap, Bimodule, Cochain, ComplexKind, CrossedModule, PreLieAlgebra, RBACochain, RBBimodule, RBPreLieAlgebra,
    Rational, RationalMatrix, TwoAlgebra, Vector,
};
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::CliError;

/// A rational number written as a string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rat(pub Rational);

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map(Rat).map_err(de::Error::custom)
    }
}

/// Row-major matrix.
pub type MatrixRows = Vec<Vec<Rat>>;
/// `table[i][j]` is the image of the basis pair `(e_i, e_j)`.
pub type Table = Vec<Vec<Vec<Rat>>>;

/// Structural error in a parsed file, with the JSON path of the offending
/// value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeError {
    pub at: String,
    pub message: String,
}

impl fmt::Display for ShapeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at {}: {}", self.at, self.message)
    }
}

type Shaped<T> = Result<T, ShapeError>;

fn shape_err<T>(at: &str, message: impl Into<String>) -> Shaped<T> {
    Err(ShapeError {
        at: at.to_string(),
        message: message.into(),
    })
}

fn expect_len(at: &str, got: usize, want: usize, what: &str) -> Shaped<()> {
    if got != want {
        return shape_err(at, format!("expected {want} {what}, found {got}"));
    }
    Ok(())
}

fn read_vector(v: &[Rat], len: usize, at: &str) -> Shaped<Vector> {
    expect_len(at, v.len(), len, "entries")?;
    Ok(v.iter().map(|q| q.0.clone()).collect())
}

fn read_matrix(m: &MatrixRows, rows: usize, cols: usize, at: &str) -> Shaped<RationalMatrix> {
    expect_len(at, m.len(), rows, "rows")?;
    let rows_v = m
        .iter()
        .enumerate()
        .map(|(i, row)| read_vector(row, cols, &format!("{at}[{i}]")))
        .collect::<Shaped<Vec<_>>>()?;
    Ok(RationalMatrix::from_rows(rows_v, cols).expect("row lengths checked"))
}

fn read_table(t: &Table, left: usize, right: usize, out: usize, at: &str) -> Shaped<BilinearMap> {
    expect_len(at, t.len(), left, "rows")?;
    let mut images = Vec::with_capacity(left * right);
    for (i, row) in t.iter().enumerate() {
        expect_len(&format!("{at}[{i}]"), row.len(), right, "entries")?;
        for (j, v) in row.iter().enumerate() {
            images.push(read_vector(v, out, &format!("{at}[{i}][{j}]"))?);
        }
    }
    let mut it = images.into_iter();
    Ok(BilinearMap::from_basis_fn(left, right, out, |_, _| {
        it.next().expect("counted")
    }))
}

fn write_vector(v: &[Rational]) -> Vec<Rat> {
    v.iter().cloned().map(Rat).collect()
}

fn write_matrix(m: &RationalMatrix) -> MatrixRows {
    (0..m.rows()).map(|r| write_vector(m.row(r))).collect()
}

fn write_table(b: &BilinearMap) -> Table {
    (0..b.left_dim())
        .map(|i| (0..b.right_dim()).map(|j| write_vector(b.on_basis(i, j))).collect())
        .collect()
}

/// An algebra with product, Rota-Baxter operator and weight, optionally
/// with a module.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<serde_json::Value>,
    pub dimension: usize,
    pub weight: Rat,
    pub product: Table,
    pub operator: MatrixRows,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleFile>,
}

/// A Rota-Baxter bimodule. `left[i]` is the matrix of `u -> e_i u`,
/// `right[i]` the matrix of `u -> u e_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub dimension: usize,
    pub left: Vec<MatrixRows>,
    pub right: Vec<MatrixRows>,
    pub operator: MatrixRows,
}

impl AlgebraFile {
    pub fn from_structures(r: &RBPreLieAlgebra, m: Option<&RBBimodule>) -> Self {
        Self {
            name: None,
            metadata: None,
            dimension: r.dim(),
            weight: Rat(r.weight.clone()),
            product: write_table(r.algebra.product()),
            operator: write_matrix(&r.operator),
            module: m.map(ModuleFile::from_module),
        }
    }

    pub fn algebra(&self) -> Shaped<RBPreLieAlgebra> {
        let d = self.dimension;
        let product = read_table(&self.product, d, d, d, "product")?;
        let operator = read_matrix(&self.operator, d, d, "operator")?;
        let algebra = PreLieAlgebra::from_product(product).expect("square table");
        Ok(RBPreLieAlgebra::new(algebra, self.weight.0.clone(), operator).expect("square operator"))
    }

    pub fn module(&self) -> Shaped<Option<RBBimodule>> {
        self.module
            .as_ref()
            .map(|m| m.to_module(self.dimension, "module"))
            .transpose()
    }

    /// Rejects a module block where none is allowed.
    pub fn algebra_only(&self, at: &str) -> Shaped<RBPreLieAlgebra> {
        if self.module.is_some() {
            return shape_err(&format!("{at}.module"), "a module block is not allowed here");
        }
        self.algebra()
    }
}

impl ModuleFile {
    pub fn from_module(m: &RBBimodule) -> Self {
        Self {
            dimension: m.mod_dim(),
            left: m.bimodule.left().iter().map(write_matrix).collect(),
            right: m.bimodule.right().iter().map(write_matrix).collect(),
            operator: write_matrix(&m.operator),
        }
    }

    pub fn to_module(&self, base_dim: usize, at: &str) -> Shaped<RBBimodule> {
        let n = self.dimension;
        let mut sides = Vec::new();
        for (name, mats) in [("left", &self.left), ("right", &self.right)] {
            let at = format!("{at}.{name}");
            expect_len(&at, mats.len(), base_dim, "matrices")?;
            sides.push(
                mats.iter()
                    .enumerate()
                    .map(|(i, a)| read_matrix(a, n, n, &format!("{at}[{i}]")))
                    .collect::<Shaped<Vec<_>>>()?,
            );
        }
        let right = sides.pop().expect("two sides");
        let left = sides.pop().expect("two sides");
        let operator = read_matrix(&self.operator, n, n, &format!("{at}.operator"))?;
        let bimodule = Bimodule::new(n, left, right).expect("shapes checked");
        Ok(RBBimodule::new(bimodule, operator).expect("shapes checked"))
    }
}

/// One sparse cochain value. `key` lists the arguments, strictly increasing
/// except for the last one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub key: Vec<usize>,
    pub value: Vec<Rat>,
}

/// A cochain of the named complex. For `rba` the pre-Lie part of degree `n`
/// goes in `entries` and the operator part of degree `n - 1` in
/// `operator_entries`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainFile {
    pub complex: String,
    pub degree: usize,
    pub entries: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub operator_entries: Vec<Entry>,
}

/// A parsed cochain file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParsedCochain {
    Single(ComplexKind, Cochain),
    Cone(RBACochain),
}

fn read_entries(entries: &[Entry], degree: usize, d: usize, m: usize, at: &str) -> Shaped<Cochain> {
    let mut values = Cochain::zero(degree, d, m).into_values();
    let keys = cochain_keys(degree, d);
    let mut seen = vec![false; keys.len().max(1)];
    for (n, e) in entries.iter().enumerate() {
        let at = format!("{at}[{n}]");
        expect_len(&format!("{at}.key"), e.key.len(), degree, "indices")?;
        if let Some(bad) = e.key.iter().find(|&&k| k == 0 || k > d) {
            return shape_err(&format!("{at}.key"), format!("index {bad} is outside 1..={d}"));
        }
        let key: Vec<usize> = e.key.iter().map(|k| k - 1).collect();
        let skew = &key[..degree.saturating_sub(1)];
        if skew.windows(2).any(|w| w[0] >= w[1]) {
            return shape_err(
                &format!("{at}.key"),
                "all but the last index must be strictly increasing",
            );
        }
        let slot = if degree == 0 {
            0
        } else {
            keys.iter().position(|k| *k == key).expect("canonical key")
        };
        if seen[slot] {
            return shape_err(&format!("{at}.key"), "duplicate key");
        }
        seen[slot] = true;
        let v = read_vector(&e.value, m, &format!("{at}.value"))?;
        values[slot * m..(slot + 1) * m].clone_from_slice(&v);
    }
    Ok(Cochain::from_values(degree, d, m, values).expect("sized"))
}

fn write_entries(c: &Cochain) -> Vec<Entry> {
    let m = c.mod_dim();
    let keys = if c.degree() == 0 {
        vec![Vec::new()]
    } else {
        cochain_keys(c.degree(), c.base_dim())
    };
    keys.into_iter()
        .enumerate()
        .filter_map(|(slot, key)| {
            let v = &c.values()[slot * m..(slot + 1) * m];
            (!is_zero_vector(v)).then(|| Entry {
                key: key.iter().map(|k| k + 1).collect(),
                value: write_vector(v),
            })
        })
        .collect()
}

impl CochainFile {
    pub fn kind(&self) -> Shaped<ComplexKind> {
        self.complex
            .parse()
            .or_else(|e: rbprelie::Error| shape_err("complex", e.to_string()))
    }

    pub fn from_single(kind: ComplexKind, c: &Cochain) -> Self {
        Self {
            complex: kind.name().to_string(),
            degree: c.degree(),
            entries: write_entries(c),
            operator_entries: Vec::new(),
        }
    }

    pub fn from_cone(c: &RBACochain) -> Self {
        Self {
            complex: ComplexKind::Rba.name().to_string(),
            degree: c.degree(),
            entries: write_entries(&c.pla_part),
            operator_entries: c.rbo_part.as_ref().map(write_entries).unwrap_or_default(),
        }
    }

    pub fn to_cochain(&self, base_dim: usize, mod_dim: usize) -> Shaped<ParsedCochain> {
        let kind = self.kind()?;
        let pla = read_entries(&self.entries, self.degree, base_dim, mod_dim, "entries")?;
        match kind {
            ComplexKind::Rba if self.degree > 0 => {
                let rbo = read_entries(
                    &self.operator_entries,
                    self.degree - 1,
                    base_dim,
                    mod_dim,
                    "operator_entries",
                )?;
                Ok(ParsedCochain::Cone(
                    RBACochain::new(pla, Some(rbo)).expect("degrees differ by one"),
                ))
            }
            _ if !self.operator_entries.is_empty() => shape_err(
                "operator_entries",
                format!(
                    "only allowed for rba cochains of positive degree, not {} in degree {}",
                    kind, self.degree
                ),
            ),
            ComplexKind::Rba => Ok(ParsedCochain::Cone(RBACochain::new(pla, None).expect("degree 0"))),
            kind => Ok(ParsedCochain::Single(kind, pla)),
        }
    }

    /// The file as a cone cochain of the given degree.
    pub fn to_cone(&self, base_dim: usize, mod_dim: usize, degree: usize) -> Shaped<RBACochain> {
        if self.degree != degree {
            return shape_err("degree", format!("expected degree {degree}, found {}", self.degree));
        }
        match self.to_cochain(base_dim, mod_dim)? {
            ParsedCochain::Cone(c) => Ok(c),
            ParsedCochain::Single(kind, _) => shape_err("complex", format!("expected an rba cochain, found {kind}")),
        }
    }
}

/// Orders `1..=order` of a formal deformation of a given structure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeformationFile {
    pub order: usize,
    pub terms: Vec<DeformationTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeformationTerm {
    pub product: Table,
    pub operator: MatrixRows,
}

impl DeformationFile {
    pub fn from_deformation(def: &TruncatedDeformation) -> Self {
        Self {
            order: def.order(),
            terms: (1..=def.order())
                .map(|k| DeformationTerm {
                    product: write_table(def.product(k)),
                    operator: write_matrix(def.operator(k)),
                })
                .collect(),
        }
    }

    pub fn to_deformation(&self, r: &RBPreLieAlgebra) -> Shaped<TruncatedDeformation> {
        let d = r.dim();
        expect_len("terms", self.terms.len(), self.order, "terms")?;
        let mut products = vec![r.algebra.product().clone()];
        let mut operators = vec![r.operator.clone()];
        for (k, t) in self.terms.iter().enumerate() {
            products.push(read_table(&t.product, d, d, d, &format!("terms[{k}].product"))?);
            operators.push(read_matrix(&t.operator, d, d, &format!("terms[{k}].operator"))?);
        }
        Ok(TruncatedDeformation::new(r, products, operators).expect("order 0 is the base"))
    }
}

/// A gauge series `Id + sum psi_k t^k`; `maps` lists `psi_1..psi_order`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaugeFile {
    pub order: usize,
    pub maps: Vec<MatrixRows>,
}

impl GaugeFile {
    pub fn from_gauge(g: &GaugeSeries) -> Self {
        Self {
            order: g.order(),
            maps: g.maps()[1..].iter().map(write_matrix).collect(),
        }
    }
}

/// An extension given by its total space, whose basis vectors from
/// `kernel_start` (1-based) on span the kernel.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub total: AlgebraFile,
    pub kernel_start: usize,
}

impl ExtensionFile {
    /// Only extensions in block form can be written.
    pub fn from_extension(e: &ExtensionData) -> Self {
        Self {
            name: None,
            total: AlgebraFile::from_structures(&e.total, None),
            kernel_start: e.base_dim() + 1,
        }
    }

    /// Base and kernel operator are read off the diagonal blocks of the
    /// total space; the inclusion and projection are the block maps.
    pub fn to_extension(&self) -> Shaped<ExtensionData> {
        let total = self.total.algebra_only("total")?;
        let n = total.dim();
        if self.kernel_start == 0 || self.kernel_start > n + 1 {
            return shape_err("kernel_start", format!("must lie in 1..={}", n + 1));
        }
        let d = self.kernel_start - 1;
        let m = n - d;
        let product = BilinearMap::from_basis_fn(d, d, d, |a, b| total.algebra.basis_product(a, b)[..d].to_vec());
        let base_op = RationalMatrix::from_fn(d, d, |r, c| total.operator.get(r, c).clone());
        let kernel_op = RationalMatrix::from_fn(m, m, |r, c| total.operator.get(d + r, d + c).clone());
        let base = RBPreLieAlgebra::new(
            PreLieAlgebra::from_product(product).expect("square"),
            total.weight.clone(),
            base_op,
        )
        .expect("square");
        let one = |yes: bool| {
            if yes {
                Rational::from_integer(1.into())
            } else {
                Rational::from_integer(0.into())
            }
        };
        let inclusion = RationalMatrix::from_fn(n, m, |r, c| one(r == d + c));
        let projection = RationalMatrix::from_fn(d, n, |r, c| one(r == c));
        Ok(ExtensionData::new(base, kernel_op, total, inclusion, projection).expect("block shapes"))
    }
}

/// One sparse value of `l3`, keyed by `(i, j, k)` with `i < j`.
pub type L3Entry = Entry;

/// A two-term algebra of a given weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwoAlgebraFile {
    pub weight: Rat,
    pub dim0: usize,
    pub dim1: usize,
    /// `dim0 x dim1`.
    pub d: MatrixRows,
    pub l2_00: Table,
    pub l2_01: Table,
    pub l2_10: Table,
    pub l3: Vec<L3Entry>,
    pub t0: MatrixRows,
    pub t1: MatrixRows,
    pub t2: Table,
}

impl TwoAlgebraFile {
    pub fn from_two_algebra(t: &TwoAlgebra, weight: &Rational) -> Self {
        Self {
            weight: Rat(weight.clone()),
            dim0: t.dim0(),
            dim1: t.dim1(),
            d: write_matrix(&t.d),
            l2_00: write_table(&t.l2_00),
            l2_01: write_table(&t.l2_01),
            l2_10: write_table(&t.l2_10),
            l3: write_entries(&t.l3),
            t0: write_matrix(&t.t0),
            t1: write_matrix(&t.t1),
            t2: write_table(&t.t2),
        }
    }

    pub fn to_two_algebra(&self) -> Shaped<(TwoAlgebra, Rational)> {
        let (n0, n1) = (self.dim0, self.dim1);
        let t = TwoAlgebra {
            d: read_matrix(&self.d, n0, n1, "d")?,
            l2_00: read_table(&self.l2_00, n0, n0, n0, "l2_00")?,
            l2_01: read_table(&self.l2_01, n0, n1, n1, "l2_01")?,
            l2_10: read_table(&self.l2_10, n1, n0, n1, "l2_10")?,
            l3: read_entries(&self.l3, 3, n0, n1, "l3")?,
            t0: read_matrix(&self.t0, n0, n0, "t0")?,
            t1: read_matrix(&self.t1, n1, n1, "t1")?,
            t2: read_table(&self.t2, n0, n0, n1, "t2")?,
        };
        Ok((t, self.weight.0.clone()))
    }
}

/// A crossed module: `g0` with its operator, the product and operator on
/// `g1`, the map `d: g1 -> g0` and the actions of `g0` on `g1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossedModuleFile {
    pub g0: AlgebraFile,
    pub dim1: usize,
    pub g1_product: Table,
    pub d: MatrixRows,
    pub left: Vec<MatrixRows>,
    pub right: Vec<MatrixRows>,
    pub t1: MatrixRows,
}

impl CrossedModuleFile {
    pub fn from_crossed(cm: &CrossedModule) -> Self {
        Self {
            g0: AlgebraFile::from_structures(&cm.g0, None),
            dim1: cm.dim1(),
            g1_product: write_table(&cm.g1_product),
            d: write_matrix(&cm.d),
            left: cm.s.iter().map(write_matrix).collect(),
            right: cm.p.iter().map(write_matrix).collect(),
            t1: write_matrix(&cm.t1),
        }
    }

    pub fn to_crossed(&self) -> Shaped<CrossedModule> {
        let g0 = self.g0.algebra_only("g0")?;
        let (n0, n1) = (g0.dim(), self.dim1);
        let mut sides = Vec::new();
        for (name, mats) in [("left", &self.left), ("right", &self.right)] {
            expect_len(name, mats.len(), n0, "matrices")?;
            sides.push(
                mats.iter()
                    .enumerate()
                    .map(|(i, a)| read_matrix(a, n1, n1, &format!("{name}[{i}]")))
                    .collect::<Shaped<Vec<_>>>()?,
            );
        }
        let p = sides.pop().expect("two sides");
        let s = sides.pop().expect("two sides");
        Ok(CrossedModule {
            g1_product: read_table(&self.g1_product, n1, n1, n1, "g1_product")?,
            d: read_matrix(&self.d, n0, n1, "d")?,
            t1: read_matrix(&self.t1, n1, n1, "t1")?,
            g0,
            s,
            p,
        })
    }
}

/// Parses JSON text into one of the file types.
pub fn parse<T: for<'de> Deserialize<'de>>(text: &str, path: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse {
        path: path.to_string(),
        message: e.to_string(),
    })
}

/// Pretty JSON with a trailing newline.
pub fn to_text<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("file types serialize");
    s.push('\n');
    s
}

/// Reads the algebra of an algebra file text, and its module when present.
pub fn parse_algebra_file(text: &str) -> Result<(RBPreLieAlgebra, Option<RBBimodule>), CliError> {
    let file: AlgebraFile = parse(text, "<text>")?;
    let shape = |e: ShapeError| CliError::Shape {
        path: "<text>".into(),
        error: e,
    };
    Ok((file.algebra().map_err(shape)?, file.module().map_err(shape)?))
}
