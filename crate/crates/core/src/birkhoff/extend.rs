//! Extension of a weighted-homogeneous logarithmic connection from the
//! punctured plane to the plane.
//!
//! Geometry: `C^2 \ 0` with the action `μ·(x, y) = (μ^p x, μ^q y)`, a
//! divisor `f` with `E(f) = n f`, and the Saito frame
//! `E = p x∂x + q y∂y`, `H = f_y ∂x - f_x ∂y`, so that `[E, H] = (n-p-q) H`.
//! Chart 0 is `{x ≠ 0}` (entries in `Q[x^±, y]`), chart ∞ is `{y ≠ 0}`
//! (entries in `Q[x, y^±]`). Each chart carries `Ω(E)` constant and
//! `Ω(H)`; the frames are related by `frame_∞ = frame_0 · g`.

use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::football::{football_split, EquivariantTransition};
use super::Transition;
use crate::algebra::bilaurent::{self, unit_inverse, BiLaurent, BiLaurentMatrix};
use crate::algebra::rational::{self, Rational};
use crate::algebra::{LaurentMatrix, LaurentPoly, Matrix, MultiPoly, Ring};
use crate::error::{Error, Result};
use crate::jordan::{additive_jordan, rational_eigenspaces};
use crate::json;
use crate::saito::{flatness_check, LogConnection, SaitoSystem, VectorField};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartData {
    pub omega_e: Matrix<Rational>,
    pub omega_h: BiLaurentMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionData {
    pub divisor: MultiPoly,
    pub p: i64,
    pub q: i64,
    pub chart0: ChartData,
    pub chart_inf: ChartData,
    pub transition: BiLaurentMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedConnection {
    pub connection: LogConnection,
    /// Weights of the global frame vectors, as multiples of `O(1)`.
    pub classes: Vec<i64>,
    /// `global frame = frame_0 · gauge0 = frame_∞ · gauge_inf`.
    pub gauge0: BiLaurentMatrix,
    pub gauge_inf: BiLaurentMatrix,
}

/// `(E, H, n)` for a weighted-homogeneous `f`.
pub fn saito_frame(f: &MultiPoly, p: i64, q: i64) -> Result<(VectorField, VectorField, i64)> {
    let n = crate::saito::euler_check(f, &[p, q])?
        .ok_or_else(|| Error::Invalid(format!("divisor is not weighted homogeneous for weights ({p}, {q})")))?;
    let n = rational::to_i64(&n).ok_or_else(|| Error::Invalid("weighted degree is not an integer".into()))?;
    let e = VectorField::euler(&[p, q]);
    let h = VectorField::new(vec![f.derivative(1), f.derivative(0).neg()]);
    Ok((e, h, n))
}

fn const_matrix(m: &Matrix<Rational>) -> BiLaurentMatrix {
    m.map(|c| BiLaurent::constant(c.clone()))
}

fn apply(field: &VectorField, m: &BiLaurentMatrix) -> Result<BiLaurentMatrix> {
    m.try_map(|e| e.apply_field(&field.coeffs))
}

/// `h⁻¹ (Ω h + δ(h))`.
fn gauge(omega: &BiLaurentMatrix, h: &BiLaurentMatrix, hinv: &BiLaurentMatrix, field: &VectorField) -> Result<BiLaurentMatrix> {
    Ok(hinv.mul(&omega.mul(h).add(&apply(field, h)?)))
}

/// `h Ω' = Ω h + δ(h)`: `Ω'` is the gauge transform of `Ω` by `h`.
fn gauge_identity(omega: &BiLaurentMatrix, h: &BiLaurentMatrix, omega2: &BiLaurentMatrix, field: &VectorField) -> Result<bool> {
    Ok(h.mul(omega2) == omega.mul(h).add(&apply(field, h)?))
}

/// Curvature `E(Ω_H) - H(Ω_E) + [Ω_E, Ω_H] - (n-p-q) Ω_H`.
fn chart_curvature(c: &ChartData, e: &VectorField, h: &VectorField, k: i64) -> Result<BiLaurentMatrix> {
    let oe = const_matrix(&c.omega_e);
    Ok(apply(e, &c.omega_h)?
        .sub(&apply(h, &oe)?)
        .add(&oe.commutator(&c.omega_h))
        .sub(&c.omega_h.scale(&BiLaurent::constant(rational::q(k)))))
}

fn sample_points() -> Vec<(Rational, Rational)> {
    (0..25i64)
        .map(|k| (rational::frac(k + 2, k % 5 + 1), rational::frac(-(2 * k + 3), k % 3 + 2)))
        .collect()
}

impl ConnectionData {
    pub fn rank(&self) -> usize {
        self.transition.rows()
    }

    /// Shape, chart regularity, flatness per chart and compatibility across
    /// the transition (exactly, and at 25 sample points).
    pub fn validate(&self) -> Result<(VectorField, VectorField, i64)> {
        if self.p < 1 || self.q < 1 || self.p.gcd(&self.q) != 1 {
            return Err(Error::Invalid(format!("weights ({}, {}) must be positive and coprime", self.p, self.q)));
        }
        let (e, h, n) = saito_frame(&self.divisor, self.p, self.q)?;
        let m = self.rank();
        for (name, c) in [("chart 0", &self.chart0), ("chart ∞", &self.chart_inf)] {
            if [c.omega_e.rows(), c.omega_e.cols(), c.omega_h.rows(), c.omega_h.cols()].iter().any(|&d| d != m) {
                return Err(Error::DimensionMismatch(format!("{name}: connection matrices must be {m}×{m}")));
            }
        }
        if !self.transition.is_square() {
            return Err(Error::DimensionMismatch("transition must be square".into()));
        }
        if !self.chart0.omega_h.iter().all(BiLaurent::regular_where_x_invertible) {
            return Err(Error::IncompatibleCharts("chart 0 data must lie in Q[x^±, y]".into()));
        }
        if !self.chart_inf.omega_h.iter().all(BiLaurent::regular_where_y_invertible) {
            return Err(Error::IncompatibleCharts("chart ∞ data must lie in Q[x, y^±]".into()));
        }
        if self.transition.det_cofactor().as_monomial().is_none() {
            return Err(Error::IncompatibleCharts("transition determinant is not a unit on the overlap".into()));
        }
        let k = n - self.p - self.q;
        for (name, c) in [("chart 0", &self.chart0), ("chart ∞", &self.chart_inf)] {
            if !chart_curvature(c, &e, &h, k)?.is_zero() {
                return Err(Error::IncompatibleCharts(format!("{name} connection is not flat")));
            }
        }
        let g = &self.transition;
        let pts = sample_points();
        for (field, o0, oi) in [
            (&e, const_matrix(&self.chart0.omega_e), const_matrix(&self.chart_inf.omega_e)),
            (&h, self.chart0.omega_h.clone(), self.chart_inf.omega_h.clone()),
        ] {
            let defect = g.mul(&oi).sub(&o0.mul(g)).sub(&apply(field, g)?);
            let at_points = pts.iter().all(|(x, y)| defect.iter().all(|d| d.eval(x, y).is_zero()));
            if !at_points || !defect.is_zero() {
                return Err(Error::IncompatibleCharts("connection matrices do not match across the transition".into()));
            }
        }
        Ok((e, h, n))
    }

    pub fn to_json(&self) -> Value {
        let chart = |c: &ChartData| {
            json!({"omegaE": json::rat_matrix_to_json(&c.omega_e), "omegaH": bilaurent::matrix_to_json(&c.omega_h)})
        };
        json!({
            "divisor": json::poly_to_json(&self.divisor, 2),
            "p": self.p,
            "q": self.q,
            "chart0": chart(&self.chart0),
            "chartInf": chart(&self.chart_inf),
            "transition": bilaurent::matrix_to_json(&self.transition),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let get = |o: &Value, k: &str| o.get(k).cloned().ok_or_else(|| Error::Parse(format!("missing \"{k}\"")));
        let int = |k: &str| get(v, k)?.as_i64().ok_or_else(|| Error::Parse(format!("\"{k}\" must be an integer")));
        let chart = |k: &str| -> Result<ChartData> {
            let c = get(v, k)?;
            Ok(ChartData {
                omega_e: json::rat_matrix_from_json(&get(&c, "omegaE")?)?,
                omega_h: bilaurent::matrix_from_json(&get(&c, "omegaH")?)?,
            })
        };
        Ok(ConnectionData {
            divisor: json::poly_from_json(&get(v, "divisor")?)?,
            p: int("p")?,
            q: int("q")?,
            chart0: chart("chart0")?,
            chart_inf: chart("chartInf")?,
            transition: bilaurent::matrix_from_json(&get(v, "transition")?)?,
        })
    }
}

/// Diagonalizing frame for the semisimple part of a constant residue and
/// the integer parts of its eigenvalues, column by column.
fn eigenframe(r: &Matrix<Rational>) -> Result<(Matrix<Rational>, Vec<i64>)> {
    let (s, _) = additive_jordan(r)?;
    let spaces = rational_eigenspaces(&s)?;
    let mut cols = Vec::new();
    let mut weights = Vec::new();
    for (ev, basis) in spaces {
        let w = rational::to_i64(&Rational::from_integer(rational::floor(&ev)))
            .ok_or_else(|| Error::Invalid("eigenvalue out of range".into()))?;
        for v in basis {
            cols.push(v);
            weights.push(w);
        }
    }
    let m = r.rows();
    Ok((Matrix::from_fn(m, m, |i, j| cols[j][i].clone()), weights))
}

fn laurent_inverse(m: &LaurentMatrix) -> Option<LaurentMatrix> {
    let n = m.rows();
    let det = m.det();
    let (c, k) = det.as_monomial()?;
    let dinv = LaurentPoly::monomial(Rational::one() / c, -k);
    Some(Matrix::from_fn(n, n, |i, j| {
        let cof = if n == 1 { LaurentPoly::one_elem() } else { m.minor(j, i).det() };
        let cof = if (i + j) % 2 == 0 { cof } else { cof.negated() };
        cof.times(&dinv)
    }))
}

fn decode(
    m: &LaurentMatrix,
    rule: impl Fn(usize, usize, i64) -> Option<(i64, i64)>,
) -> Result<BiLaurentMatrix> {
    let mut out = Matrix::<BiLaurent>::zeros(m.rows(), m.cols());
    for i in 0..m.rows() {
        for k in 0..m.cols() {
            let mut acc = BiLaurent::zero();
            for (e, c) in m[(i, k)].terms() {
                let (a, b) = rule(i, k, e)
                    .ok_or_else(|| Error::IncompatibleCharts(format!("factor entry ({i}, {k}) is not equivariant")))?;
                acc = acc.plus(&BiLaurent::monomial(c.clone(), a, b));
            }
            out[(i, k)] = acc;
        }
    }
    Ok(out)
}

fn exact_div(a: i64, b: i64) -> Option<i64> {
    (a.rem_euclid(b) == 0).then(|| a.div_euclid(b))
}

pub fn extend_connection(data: &ConnectionData) -> Result<ExtendedConnection> {
    let (e, h, _) = data.validate()?;
    let (p, q) = (data.p, data.q);
    let m = data.rank();
    let system = SaitoSystem::with_names(vec!["x".into(), "y".into()], vec![e.clone(), h.clone()], data.divisor.clone())?;

    let (v0, z0) = eigenframe(&data.chart0.omega_e)?;
    let (vi, zi) = eigenframe(&data.chart_inf.omega_e)?;

    let identity = BiLaurentMatrix::identity(m);
    if data.transition == identity && data.chart0 == data.chart_inf {
        if let Some(oh) = data.chart0.omega_h.try_map(|x| x.to_poly().ok_or(())).ok() {
            let oe = data.chart0.omega_e.map(|c| MultiPoly::constant(c.clone()));
            let connection = LogConnection::new(system, vec![oe, oh])?;
            let mut classes = z0.clone();
            classes.sort_unstable_by(|a, b| b.cmp(a));
            return Ok(ExtendedConnection { connection, classes, gauge0: identity.clone(), gauge_inf: identity });
        }
    }

    // Transition between the eigenframes; entry (i, j) is homogeneous of
    // weight z^∞_j - z^0_i.
    let v0inv = v0.inverse().ok_or(Error::Singular)?;
    let gp = const_matrix(&v0inv).mul(&data.transition).mul(&const_matrix(&vi));
    let mut enc = LaurentMatrix::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            let mut acc = LaurentPoly::zero();
            for ((a, b), c) in gp[(i, j)].terms() {
                if p * a + q * b != zi[j] - z0[i] {
                    return Err(Error::IncompatibleCharts(format!(
                        "transition entry ({i}, {j}) has a term of weight {} instead of {}",
                        p * a + q * b,
                        zi[j] - z0[i]
                    )));
                }
                acc = acc.plus(&LaurentPoly::monomial(c.clone(), z0[i] + p * a));
            }
            enc[(i, j)] = acc;
        }
    }
    let et = EquivariantTransition::new(Transition::new(enc)?, p, q, z0.clone(), zi.clone())?;
    let split = football_split(&et)?;
    let f = &split.factorization;
    let n = &f.exponents;

    let h0_enc = f.pminus.mul(&f.d());
    let hi_enc = laurent_inverse(&f.pplus).ok_or_else(|| Error::Invalid("P⁺ is not unimodular".into()))?;
    let h0p = decode(&h0_enc, |i, k, e| {
        let b = exact_div(n[k] - e, q)?;
        let a = exact_div(e - z0[i], p)?;
        (b >= 0).then_some((a, b))
    })?;
    let hip = decode(&hi_enc, |j, k, e| {
        let a = exact_div(e, p)?;
        let b = exact_div(n[k] - zi[j] - e, q)?;
        (a >= 0).then_some((a, b))
    })?;
    let gauge0 = const_matrix(&v0).mul(&h0p);
    let gauge_inf = const_matrix(&vi).mul(&hip);
    if data.transition.mul(&gauge_inf) != gauge0 {
        return Err(Error::IncompatibleCharts("chart gauges do not reproduce the transition".into()));
    }

    let g0inv = unit_inverse(&gauge0).ok_or_else(|| Error::Invalid("chart 0 gauge is not invertible".into()))?;
    let giinv = unit_inverse(&gauge_inf).ok_or_else(|| Error::Invalid("chart ∞ gauge is not invertible".into()))?;
    let mut omegas = Vec::with_capacity(2);
    for (field, o0, oi) in [
        (&e, const_matrix(&data.chart0.omega_e), const_matrix(&data.chart_inf.omega_e)),
        (&h, data.chart0.omega_h.clone(), data.chart_inf.omega_h.clone()),
    ] {
        let from0 = gauge(&o0, &gauge0, &g0inv, field)?;
        let from_inf = gauge(&oi, &gauge_inf, &giinv, field)?;
        if from0 != from_inf {
            return Err(Error::IncompatibleCharts("global connection differs between charts".into()));
        }
        if !gauge_identity(&o0, &gauge0, &from0, field)? || !gauge_identity(&oi, &gauge_inf, &from0, field)? {
            return Err(Error::IncompatibleCharts("gauge identity failed".into()));
        }
        let poly = from0
            .try_map(|x| x.to_poly().ok_or(()))
            .map_err(|_| Error::IncompatibleCharts("global connection matrix is not polynomial".into()))?;
        omegas.push(poly);
    }
    let connection = LogConnection::new(system, omegas)?;
    if !flatness_check(&connection)?.flat {
        return Err(Error::Invalid("extended connection is not flat".into()));
    }
    Ok(ExtendedConnection { connection, classes: n.clone(), gauge0, gauge_inf })
}

impl ConnectionData {
    /// Chart data of a global connection seen through chart frames
    /// `frame_0 = s · k0` and `frame_∞ = s · k_inf`. Each gauge must be
    /// invertible on its chart and keep `Ω(E)` constant.
    pub fn from_global(
        divisor: MultiPoly,
        p: i64,
        q: i64,
        omega_e: &Matrix<Rational>,
        omega_h: &BiLaurentMatrix,
        k0: &BiLaurentMatrix,
        k_inf: &BiLaurentMatrix,
    ) -> Result<Self> {
        let (e, h, _) = saito_frame(&divisor, p, q)?;
        let oe = const_matrix(omega_e);
        let chart = |k: &BiLaurentMatrix| -> Result<ChartData> {
            let kinv = unit_inverse(k).ok_or_else(|| Error::Invalid("chart gauge is not invertible".into()))?;
            let ce = gauge(&oe, k, &kinv, &e)?;
            let omega_e = ce
                .try_map(|x| if x.is_zero() { Ok(Rational::zero()) } else { x.as_monomial().filter(|(_, a, b)| *a == 0 && *b == 0).map(|(c, _, _)| c).ok_or(()) })
                .map_err(|_| Error::Invalid("chart gauge does not keep Ω(E) constant".into()))?;
            Ok(ChartData { omega_e, omega_h: gauge(omega_h, k, &kinv, &h)? })
        };
        let chart0 = chart(k0)?;
        let chart_inf = chart(k_inf)?;
        let k0inv = unit_inverse(k0).ok_or_else(|| Error::Invalid("chart gauge is not invertible".into()))?;
        Ok(ConnectionData { divisor, p, q, chart0, chart_inf, transition: k0inv.mul(k_inf) })
    }
}

impl ExtendedConnection {
    /// Re-checks the restriction to each chart: `gauge Ω_glob = Ω_chart gauge
    /// + δ(gauge)` for both fields, exactly.
    pub fn restricts_to(&self, data: &ConnectionData) -> Result<bool> {
        let sys = &self.connection.system;
        let glob: Vec<BiLaurentMatrix> = self
            .connection
            .omegas
            .iter()
            .map(|o| o.try_map(BiLaurent::from_poly))
            .collect::<Result<_>>()?;
        for (c, gmat) in [(&data.chart0, &self.gauge0), (&data.chart_inf, &self.gauge_inf)] {
            let oe = const_matrix(&c.omega_e);
            if !gauge_identity(&oe, gmat, &glob[0], &sys.fields[0])?
                || !gauge_identity(&c.omega_h, gmat, &glob[1], &sys.fields[1])?
            {
                return Ok(false);
            }
        }
        Ok(data.transition.mul(&self.gauge_inf) == self.gauge0)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "connection": self.connection.to_json(),
            "classes": self.classes,
            "gauge0": bilaurent::matrix_to_json(&self.gauge0),
            "gaugeInf": bilaurent::matrix_to_json(&self.gauge_inf),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{frac, q};

    fn cross() -> MultiPoly {
        MultiPoly::var(0).mul(&MultiPoly::var(1))
    }

    fn diag(v: &[i64]) -> Matrix<Rational> {
        Matrix::diagonal(v.iter().map(|&x| q(x)).collect())
    }

    fn bl_diag(v: &[(i64, i64)]) -> BiLaurentMatrix {
        Matrix::diagonal(v.iter().map(|&(a, b)| BiLaurent::xy(a, b)).collect())
    }

    #[test]
    fn already_global_is_returned_unchanged() {
        let r = diag(&[1, 0]);
        let zero = BiLaurentMatrix::zeros(2, 2);
        let chart = ChartData { omega_e: r, omega_h: zero };
        let data = ConnectionData {
            divisor: cross(),
            p: 1,
            q: 1,
            chart0: chart.clone(),
            chart_inf: chart,
            transition: BiLaurentMatrix::identity(2),
        };
        let ext = extend_connection(&data).unwrap();
        assert!(ext.connection.omegas[1].is_zero());
        assert_eq!(ext.connection.omegas[0], data.chart0.omega_e.map(|c| MultiPoly::constant(c.clone())));
    }

    #[test]
    fn rank_one_twist_is_recorded() {
        // Global frame of weight 2 on the cross; chart frames s x^1 and s y^-3.
        let r = Matrix::diagonal(vec![frac(5, 2)]);
        let oh = BiLaurentMatrix::zeros(1, 1);
        let data = ConnectionData::from_global(cross(), 1, 1, &r, &oh, &bl_diag(&[(1, 0)]), &bl_diag(&[(0, -3)])).unwrap();
        let ext = extend_connection(&data).unwrap();
        assert_eq!(ext.classes, vec![2]);
        assert!(ext.restricts_to(&data).unwrap());
    }

    #[test]
    fn cusp_with_unipotent_gauge() {
        // f = x^2 - y^3, weights (3, 2), n = 6.
        let x = MultiPoly::var(0);
        let y = MultiPoly::var(1);
        let f = x.mul(&x).sub(&y.mul(&y).mul(&y));
        let r = Matrix::diagonal(vec![frac(1, 3), frac(7, 3)]);
        let oh = BiLaurentMatrix::zeros(2, 2);
        // c = y has weight 2 = r2 - r1 and is regular on chart 0.
        let k0 = Matrix::from_rows(vec![
            vec![BiLaurent::xy(0, 0), BiLaurent::xy(0, 1)],
            vec![BiLaurent::zero(), BiLaurent::xy(0, 0)],
        ]);
        let kinf = bl_diag(&[(0, -1), (0, 2)]);
        let data = ConnectionData::from_global(f, 3, 2, &r, &oh, &k0, &kinf).unwrap();
        let ext = extend_connection(&data).unwrap();
        assert!(ext.restricts_to(&data).unwrap());
        assert_eq!(ext.classes, vec![2, 0]);
    }

    #[test]
    fn irrational_residue_is_rejected() {
        let r = Matrix::from_rows(vec![vec![q(0), q(2)], vec![q(1), q(0)]]);
        let chart = ChartData { omega_e: r, omega_h: BiLaurentMatrix::zeros(2, 2) };
        let data = ConnectionData {
            divisor: cross(),
            p: 1,
            q: 1,
            chart0: chart.clone(),
            chart_inf: chart,
            transition: bl_diag(&[(1, -1), (0, 0)]),
        };
        assert!(matches!(extend_connection(&data), Err(Error::NotQuasiUnipotent(_)) | Err(Error::IncompatibleCharts(_))));
    }
}
