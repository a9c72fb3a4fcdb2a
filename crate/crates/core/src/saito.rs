//! Logarithmic vector fields, the Saito criterion and flatness of
//! connection matrices written in a Saito frame.

use serde_json::{json, Value};

use crate::algebra::rational::{self, Rational};
use crate::algebra::{gcd, squarefree_part, Matrix, MultiPoly, PolyMatrix, Ring};
use crate::error::{Error, Result};
use crate::json;

/// `Σ a_i ∂_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    pub coeffs: Vec<MultiPoly>,
}

impl VectorField {
    pub fn new(coeffs: Vec<MultiPoly>) -> Self {
        VectorField { coeffs }
    }

    pub fn zero(dim: usize) -> Self {
        VectorField { coeffs: vec![MultiPoly::zero(); dim] }
    }

    /// `x_i ∂_i`.
    pub fn scaling(dim: usize, i: usize) -> Self {
        let mut v = VectorField::zero(dim);
        v.coeffs[i] = MultiPoly::var(i);
        v
    }

    /// `E = Σ w_i x_i ∂_i`.
    pub fn euler(weights: &[i64]) -> Self {
        VectorField {
            coeffs: weights
                .iter()
                .enumerate()
                .map(|(i, &w)| MultiPoly::var(i).scale(&rational::q(w)))
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(MultiPoly::is_zero)
    }

    /// The derivation applied to a polynomial.
    pub fn apply(&self, f: &MultiPoly) -> MultiPoly {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .fold(MultiPoly::zero(), |acc, (i, a)| acc.add(&a.mul(&f.derivative(i))))
    }

    pub fn apply_matrix(&self, m: &PolyMatrix) -> PolyMatrix {
        m.map(|p| self.apply(p))
    }

    pub fn add(&self, o: &Self) -> Self {
        VectorField { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn scale(&self, c: &MultiPoly) -> Self {
        VectorField { coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect() }
    }

    pub fn to_json(&self) -> Value {
        let n = self.dim();
        Value::Array(self.coeffs.iter().map(|a| json::poly_to_json(a, n)).collect())
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v.as_array().ok_or_else(|| Error::Parse("vector field must be an array".into()))?;
        Ok(VectorField { coeffs: arr.iter().map(json::poly_from_json).collect::<Result<_>>()? })
    }
}

/// `[V, W]_i = V(W_i) - W(V_i)`.
pub fn lie_bracket(v: &VectorField, w: &VectorField) -> Result<VectorField> {
    if v.dim() != w.dim() {
        return Err(Error::DimensionMismatch(format!("fields on {} and {} variables", v.dim(), w.dim())));
    }
    Ok(VectorField {
        coeffs: v.coeffs.iter().zip(&w.coeffs).map(|(vi, wi)| v.apply(wi).sub(&w.apply(vi))).collect(),
    })
}

/// Returns `n` with `E(f) = n f` for `E = Σ w_i x_i ∂_i`, or `None` when `f`
/// is not weighted homogeneous for these weights.
pub fn euler_check(f: &MultiPoly, weights: &[i64]) -> Result<Option<Rational>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.num_vars_used() > weights.len() {
        return Err(Error::DimensionMismatch(format!(
            "polynomial uses {} variables, {} weights given",
            f.num_vars_used(),
            weights.len()
        )));
    }
    let ef = VectorField::euler(weights).apply(f);
    Ok(ef.constant_multiple_of(f).or_else(|| ef.is_zero().then(Rational::default)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaitoSystem {
    pub vars: Vec<String>,
    pub fields: Vec<VectorField>,
    pub divisor: MultiPoly,
}

/// Why a system fails the criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SaitoWitness {
    /// `f` has a repeated factor; carries `gcd(f, ∂f)`.
    NotReduced(MultiPoly),
    /// Field `index` does not map `f` into the ideal `(f)`.
    NotLogarithmic(usize),
    /// The Saito determinant is not a constant multiple of `f`.
    DeterminantMismatch(MultiPoly),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaitoVerdict {
    pub free: bool,
    /// `c` with `det = c f`, when such a constant exists.
    pub unit: Option<Rational>,
    pub reduced: bool,
    pub determinant: MultiPoly,
    pub witness: Option<SaitoWitness>,
}

impl SaitoSystem {
    pub fn new(fields: Vec<VectorField>, divisor: MultiPoly) -> Result<Self> {
        let n = fields.len();
        let vars = default_names(n);
        SaitoSystem::with_names(vars, fields, divisor)
    }

    pub fn with_names(vars: Vec<String>, fields: Vec<VectorField>, divisor: MultiPoly) -> Result<Self> {
        let n = vars.len();
        if fields.len() != n || fields.iter().any(|f| f.dim() != n) {
            return Err(Error::DimensionMismatch(format!("need {n} fields with {n} coefficients each")));
        }
        if divisor.num_vars_used() > n {
            return Err(Error::DimensionMismatch("divisor uses more variables than declared".into()));
        }
        Ok(SaitoSystem { vars, fields, divisor })
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    /// Row `i` holds the coefficients of field `i`.
    pub fn saito_matrix(&self) -> PolyMatrix {
        Matrix::from_rows(self.fields.iter().map(|f| f.coeffs.clone()).collect())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "vars": self.vars,
            "divisor": json::poly_to_json(&self.divisor, self.dim()),
            "fields": self.fields.iter().map(VectorField::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let fields = v
            .get("fields")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing \"fields\" array".into()))?
            .iter()
            .map(VectorField::from_json)
            .collect::<Result<Vec<_>>>()?;
        let divisor = json::poly_from_json(v.get("divisor").ok_or_else(|| Error::Parse("missing \"divisor\"".into()))?)?;
        let vars = match v.get("vars") {
            Some(names) => names
                .as_array()
                .ok_or_else(|| Error::Parse("\"vars\" must be an array of strings".into()))?
                .iter()
                .map(|s| s.as_str().map(String::from).ok_or_else(|| Error::Parse("variable name must be a string".into())))
                .collect::<Result<Vec<_>>>()?,
            None => default_names(fields.len()),
        };
        SaitoSystem::with_names(vars, fields, divisor)
    }
}

pub fn default_names(n: usize) -> Vec<String> {
    match n {
        1..=3 => ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect(),
        _ => (1..=n).map(|i| format!("x{i}")).collect(),
    }
}

/// Saito's criterion: the fields form a basis of logarithmic fields iff
/// each is logarithmic and `det = c f` with `c ≠ 0` and `f` reduced.
pub fn saito_check(sys: &SaitoSystem) -> SaitoVerdict {
    let determinant = sys.saito_matrix().det();
    let f = &sys.divisor;
    let reduced = match squarefree_part(f) {
        Ok((_, r)) => r,
        Err(_) => false,
    };
    let unit = determinant.constant_multiple_of(f).filter(|c| *c != Rational::default());
    let witness = if !reduced {
        let mut g = f.clone();
        for i in 0..sys.dim() {
            g = gcd(&g, &f.derivative(i));
        }
        Some(SaitoWitness::NotReduced(g))
    } else if let Some(i) = sys.fields.iter().position(|d| d.apply(f).div_exact(f).is_none()) {
        Some(SaitoWitness::NotLogarithmic(i))
    } else if unit.is_none() {
        Some(SaitoWitness::DeterminantMismatch(determinant.clone()))
    } else {
        None
    };
    SaitoVerdict { free: witness.is_none(), unit, reduced, determinant, witness }
}

/// Connection matrices `Ω_i = Ω(δ_i)` in the frame given by a Saito basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogConnection {
    pub system: SaitoSystem,
    pub omegas: Vec<PolyMatrix>,
}

impl LogConnection {
    pub fn new(system: SaitoSystem, omegas: Vec<PolyMatrix>) -> Result<Self> {
        if omegas.len() != system.fields.len() {
            return Err(Error::DimensionMismatch("one connection matrix per field required".into()));
        }
        let m = omegas.first().map_or(0, Matrix::rows);
        if omegas.iter().any(|o| o.rows() != m || o.cols() != m) {
            return Err(Error::DimensionMismatch("connection matrices must be square of equal size".into()));
        }
        Ok(LogConnection { system, omegas })
    }

    pub fn rank(&self) -> usize {
        self.omegas.first().map_or(0, Matrix::rows)
    }

    pub fn to_json(&self) -> Value {
        let n = self.system.dim();
        json!({
            "system": self.system.to_json(),
            "omegas": self.omegas.iter().map(|o| json::poly_matrix_to_json(o, n)).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let system = SaitoSystem::from_json(v.get("system").ok_or_else(|| Error::Parse("missing \"system\"".into()))?)?;
        let omegas = v
            .get("omegas")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing \"omegas\" array".into()))?
            .iter()
            .map(json::poly_matrix_from_json)
            .collect::<Result<Vec<_>>>()?;
        LogConnection::new(system, omegas)
    }
}

/// Structure constants `c_ij^k` with `[δ_i, δ_j] = Σ_k c_ij^k δ_k`, indexed
/// `[i][j][k]`. Solved by Cramer's rule over the polynomial ring; every
/// quotient must be exact.
pub fn structure_constants(sys: &SaitoSystem) -> Result<Vec<Vec<Vec<MultiPoly>>>> {
    let n = sys.fields.len();
    let a = sys.saito_matrix();
    let det = a.det();
    if det.is_zero() {
        return Err(Error::Invalid("Saito matrix is singular".into()));
    }
    let mut c = vec![vec![vec![MultiPoly::zero(); n]; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let b = lie_bracket(&sys.fields[i], &sys.fields[j])?;
            if b.is_zero() {
                continue;
            }
            for k in 0..n {
                let mut ak = a.clone();
                for (col, bc) in b.coeffs.iter().enumerate() {
                    ak[(k, col)] = bc.clone();
                }
                let ck = ak.det().div_exact(&det).ok_or(Error::NotClosed(i, j))?;
                c[j][i][k] = ck.neg();
                c[i][j][k] = ck;
            }
        }
    }
    Ok(c)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatnessVerdict {
    pub flat: bool,
    /// First pair `(i, j)` with nonzero curvature.
    pub witness: Option<(usize, usize)>,
}

/// Curvature `δ_i(Ω_j) - δ_j(Ω_i) + [Ω_i, Ω_j] - Σ_k c_ij^k Ω_k`.
pub fn curvature(conn: &LogConnection, c: &[Vec<Vec<MultiPoly>>], i: usize, j: usize) -> PolyMatrix {
    let f = &conn.system.fields;
    let o = &conn.omegas;
    let mut lhs = f[i].apply_matrix(&o[j]).sub(&f[j].apply_matrix(&o[i])).add(&o[i].commutator(&o[j]));
    for (k, ok) in o.iter().enumerate() {
        if !c[i][j][k].is_zero() {
            lhs = lhs.sub(&ok.scale(&c[i][j][k]));
        }
    }
    lhs
}

pub fn flatness_check(conn: &LogConnection) -> Result<FlatnessVerdict> {
    let c = structure_constants(&conn.system)?;
    let n = conn.omegas.len();
    for i in 0..n {
        for j in i + 1..n {
            if !curvature(conn, &c, i, j).is_zero() {
                return Ok(FlatnessVerdict { flat: false, witness: Some((i, j)) });
            }
        }
    }
    Ok(FlatnessVerdict { flat: true, witness: None })
}

/// `Ω_i` evaluated at the origin.
pub fn residue_at_origin(conn: &LogConnection, field_index: usize) -> Result<Matrix<Rational>> {
    let o = conn
        .omegas
        .get(field_index)
        .ok_or_else(|| Error::Invalid(format!("field index {field_index} out of range")))?;
    Ok(o.map(MultiPoly::constant_term))
}

/// Convenience: a constant polynomial matrix.
pub fn constant_matrix(m: &Matrix<Rational>) -> PolyMatrix {
    m.map(|c| MultiPoly::from_rational(c))
}
