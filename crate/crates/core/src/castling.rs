//! Castling transforms of prehomogeneous descriptors, the minor-product
//! divisors they produce, the Morita weight rescaling and residue-level
//! representations with a residual `SL(n-1)` factor.

use serde_json::{json, Value};

use crate::algebra::rational::{self, Rational};
use crate::algebra::{Matrix, MultiPoly, Ring};
use crate::error::{Error, Result};
use crate::json;
use crate::saito::VectorField;

pub type QMatrix = Matrix<Rational>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupFactor {
    Torus(usize),
    SL(usize),
    Abstract(String, usize),
}

impl GroupFactor {
    pub fn dim(&self) -> usize {
        match self {
            GroupFactor::Torus(k) => *k,
            GroupFactor::SL(s) => s * s - 1,
            GroupFactor::Abstract(_, d) => *d,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            GroupFactor::Torus(k) => json!({"type": "torus", "rank": k}),
            GroupFactor::SL(s) => json!({"type": "sl", "size": s}),
            GroupFactor::Abstract(name, d) => json!({"type": "abstract", "name": name, "dim": d}),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let field = |k: &str| -> Result<usize> {
            v.get(k)
                .and_then(Value::as_u64)
                .map(|x| x as usize)
                .ok_or_else(|| Error::Parse(format!("group factor needs integer \"{k}\"")))
        };
        match v.get("type").and_then(Value::as_str) {
            Some("torus") => Ok(GroupFactor::Torus(field("rank")?)),
            Some("sl") => Ok(GroupFactor::SL(field("size")?)),
            Some("abstract") => {
                let name = v
                    .get("name")
                    .and_then(Value::as_str)
                    .ok_or_else(|| Error::Parse("abstract factor needs \"name\"".into()))?;
                Ok(GroupFactor::Abstract(name.to_string(), field("dim")?))
            }
            other => Err(Error::Parse(format!("unknown group factor type {other:?}"))),
        }
    }
}

impl std::fmt::Display for GroupFactor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupFactor::Torus(k) => write!(f, "(C*)^{k}"),
            GroupFactor::SL(s) => write!(f, "SL({s})"),
            GroupFactor::Abstract(name, _) => write!(f, "{name}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Primal,
    Dual,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Primal => Side::Dual,
            Side::Dual => Side::Primal,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Side::Primal => "primal",
            Side::Dual => "dual",
        }
    }
}

/// `(G × SL(r), Hom(C^r, V))` with `dim V = n`, or the same on `V*` when
/// `side` is `Dual`. `factors` lists `G` only; the `SL(r)` factor is implied
/// by `r` and is present whenever `r ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrehomDescriptor {
    pub n: usize,
    pub r: usize,
    pub factors: Vec<GroupFactor>,
    pub side: Side,
}

impl PrehomDescriptor {
    pub fn new(n: usize, r: usize, factors: Vec<GroupFactor>, side: Side) -> Result<Self> {
        if r < 1 || r >= n {
            return Err(Error::Invalid(format!("castling parameter r = {r} must satisfy 1 <= r < n = {n}")));
        }
        Ok(PrehomDescriptor { n, r, factors, side })
    }

    pub fn ambient_dim(&self) -> usize {
        self.r * self.n
    }

    /// `G` followed by `SL(r)` when it is nontrivial.
    pub fn group(&self) -> Vec<GroupFactor> {
        let mut g = self.factors.clone();
        if self.r >= 2 {
            g.push(GroupFactor::SL(self.r));
        }
        g
    }

    pub fn group_dim(&self) -> usize {
        self.group().iter().map(GroupFactor::dim).sum()
    }

    /// View the representation space itself as a new base `V' = Hom(C^r, V)`
    /// with `r = 1`, ready for another castling step.
    pub fn as_base(&self) -> PrehomDescriptor {
        PrehomDescriptor { n: self.ambient_dim(), r: 1, factors: self.group(), side: Side::Primal }
    }

    pub fn morita_factor(&self) -> Rational {
        rational::frac(self.r as i64, self.r as i64 - self.n as i64)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "r": self.r,
            "factors": self.factors.iter().map(GroupFactor::to_json).collect::<Vec<_>>(),
            "side": self.side.as_str(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let int = |k: &str| -> Result<usize> {
            v.get(k)
                .and_then(Value::as_u64)
                .map(|x| x as usize)
                .ok_or_else(|| Error::Parse(format!("descriptor needs integer \"{k}\"")))
        };
        let factors = match v.get("factors") {
            None => Vec::new(),
            Some(Value::Array(a)) => a.iter().map(GroupFactor::from_json).collect::<Result<_>>()?,
            Some(_) => return Err(Error::Parse("\"factors\" must be an array".into())),
        };
        let side = match v.get("side").and_then(Value::as_str).unwrap_or("primal") {
            "primal" => Side::Primal,
            "dual" => Side::Dual,
            s => return Err(Error::Parse(format!("unknown side {s:?}"))),
        };
        PrehomDescriptor::new(int("n")?, int("r")?, factors, side)
    }
}

impl std::fmt::Display for PrehomDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let group: Vec<String> = self.group().iter().map(|g| g.to_string()).collect();
        let target = match self.side {
            Side::Primal => "V",
            Side::Dual => "V*",
        };
        write!(
            f,
            "({}, Hom(C^{}, {target})), dim V = {}, dim = {}",
            group.join(" x "),
            self.r,
            self.n,
            self.ambient_dim()
        )
    }
}

pub fn castling_transform(d: &PrehomDescriptor) -> PrehomDescriptor {
    PrehomDescriptor { n: d.n, r: d.n - d.r, factors: d.factors.clone(), side: d.side.flip() }
}

/// The start descriptor followed by `steps` castlings, each applied to the
/// previous representation space regarded as a base with `r = 1`.
pub fn castling_chain(start: &PrehomDescriptor, steps: usize) -> Vec<PrehomDescriptor> {
    let mut out = vec![start.clone()];
    let mut cur = start.clone();
    for i in 0..steps {
        cur = if i == 0 && cur.r == 1 {
            castling_transform(&cur)
        } else {
            castling_transform(&cur.as_base())
        };
        out.push(cur.clone());
    }
    out
}

/// `(r / (r - n)) · w`.
pub fn morita_rescale(r: i64, n: i64, w: &Rational) -> Result<Rational> {
    if r == n {
        return Err(Error::Invalid("morita_rescale: r = n".into()));
    }
    if r < 1 || r > n {
        return Err(Error::Invalid(format!("morita_rescale: need 1 <= r < n, got r = {r}, n = {n}")));
    }
    Ok(rational::frac(r, r - n) * w)
}

fn column_letter(c: usize) -> String {
    const LETTERS: [&str; 3] = ["u", "v", "w"];
    match c {
        0..=2 => LETTERS[c].to_string(),
        3..=22 => ((b'a' + (c - 3) as u8) as char).to_string(),
        _ => format!("c{c}_"),
    }
}

/// Variable index of entry `(row, col)` of the generic `(n-1) × n` matrix;
/// columns are stored contiguously.
pub fn minor_variable(n: usize, row: usize, col: usize) -> usize {
    col * (n - 1) + row
}

/// `u1, u2, …, v1, v2, …`: columns are letters, rows are subscripts.
pub fn minor_variable_names(n: usize) -> Vec<String> {
    (0..n)
        .flat_map(|c| (1..n).map(move |r| format!("{}{r}", column_letter(c))))
        .collect()
}

/// Product of the `n` maximal minors of a generic `(n-1) × n` matrix, each
/// taken on the columns following the omitted one in cyclic order.
pub fn minor_product_divisor(n: usize) -> Result<MultiPoly> {
    if n < 2 {
        return Err(Error::Invalid(format!("minor_product_divisor needs n >= 2, got {n}")));
    }
    let k = n - 1;
    let mut f = MultiPoly::from_int(1);
    for omit in 0..n {
        let cols: Vec<usize> = (1..n).map(|s| (omit + s) % n).collect();
        let m = Matrix::from_fn(k, k, |i, j| MultiPoly::var(minor_variable(n, i, cols[j])));
        f = f.mul(&m.det());
    }
    Ok(f)
}

/// Column scalings followed by the left action of `sl(n-1)`: for each simple
/// root `e_i, f_i, h_i`, then the remaining root vectors `E_ab`, `|a-b| > 1`.
pub fn minor_product_fields(n: usize) -> Result<Vec<VectorField>> {
    if n < 2 {
        return Err(Error::Invalid(format!("minor_product_fields needs n >= 2, got {n}")));
    }
    let k = n - 1;
    let dim = n * k;
    let mut out = Vec::with_capacity(dim);
    for c in 0..n {
        let mut v = VectorField::zero(dim);
        for r in 0..k {
            let i = minor_variable(n, r, c);
            v.coeffs[i] = MultiPoly::var(i);
        }
        out.push(v);
    }
    let left = |a: &QMatrix| {
        let mut v = VectorField::zero(dim);
        for c in 0..n {
            for r in 0..k {
                let mut acc = MultiPoly::zero();
                for s in 0..k {
                    if !a[(r, s)].is_zero_elem() {
                        acc = acc.add(&MultiPoly::var(minor_variable(n, s, c)).scale(&a[(r, s)]));
                    }
                }
                v.coeffs[minor_variable(n, r, c)] = acc;
            }
        }
        v
    };
    for a in chevalley_fundamental(k) {
        out.push(left(&a));
    }
    for a in 0..k {
        for b in 0..k {
            if a.abs_diff(b) > 1 {
                out.push(left(&elementary(k, a, b)));
            }
        }
    }
    Ok(out)
}

fn elementary(k: usize, a: usize, b: usize) -> QMatrix {
    let mut m = QMatrix::zeros(k, k);
    m[(a, b)] = rational::q(1);
    m
}

/// `e_i, f_i, h_i` for each simple root of `sl(k)` on `C^k`.
pub fn chevalley_fundamental(k: usize) -> Vec<QMatrix> {
    let mut out = Vec::new();
    for i in 0..k.saturating_sub(1) {
        out.push(elementary(k, i, i + 1));
        out.push(elementary(k, i + 1, i));
        out.push(elementary(k, i, i).sub(&elementary(k, i + 1, i + 1)));
    }
    out
}

/// `e, f, h` of `sl(2)` acting on itself in the basis `(e, h, f)`.
pub fn sl2_adjoint() -> Vec<QMatrix> {
    let m = |rows: [[i64; 3]; 3]| {
        QMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rational::q(x)).collect()).collect())
    };
    vec![
        m([[0, -2, 0], [0, 0, 1], [0, 0, 0]]),
        m([[0, 0, 0], [-1, 0, 0], [0, 2, 0]]),
        m([[2, 0, 0], [0, 0, 0], [0, 0, -2]]),
    ]
}

pub fn generator_name(index: usize) -> String {
    let root = index / 3 + 1;
    match index % 3 {
        0 => format!("e{root}"),
        1 => format!("f{root}"),
        _ => format!("h{root}"),
    }
}

fn cartan(i: usize, j: usize) -> i64 {
    if i == j {
        2
    } else if i.abs_diff(j) == 1 {
        -1
    } else {
        0
    }
}

/// Checks the Chevalley relations of `sl(n-1)` on `3(n-2)` matrices given as
/// `e_1, f_1, h_1, e_2, …`.
pub fn check_chevalley(gens: &[QMatrix], n: usize) -> Result<()> {
    let roots = n.saturating_sub(2);
    if gens.len() != 3 * roots {
        return Err(Error::Invalid(format!(
            "sl({}) needs {} Chevalley generators, got {}",
            n.saturating_sub(1),
            3 * roots,
            gens.len()
        )));
    }
    if let Some(m) = gens.first() {
        if gens.iter().any(|g| !g.is_square() || g.rows() != m.rows()) {
            return Err(Error::DimensionMismatch("Chevalley generators must share one square size".into()));
        }
    }
    let e = |i: usize| &gens[3 * i];
    let f = |i: usize| &gens[3 * i + 1];
    let h = |i: usize| &gens[3 * i + 2];
    let fail = |what: String| Err(Error::Invalid(format!("Chevalley relation fails: {what}")));
    for i in 0..roots {
        for j in 0..roots {
            let a = rational::q(cartan(i, j));
            if !h(i).commutator(h(j)).is_zero() {
                return fail(format!("[h{}, h{}] != 0", i + 1, j + 1));
            }
            if h(i).commutator(e(j)) != e(j).scale(&a) {
                return fail(format!("[h{}, e{}] != {} e{}", i + 1, j + 1, a, j + 1));
            }
            if h(i).commutator(f(j)) != f(j).scale(&-a.clone()) {
                return fail(format!("[h{}, f{}] != {} f{}", i + 1, j + 1, -a, j + 1));
            }
            let ef = e(i).commutator(f(j));
            let want = if i == j { h(i).clone() } else { QMatrix::zeros(ef.rows(), ef.cols()) };
            if ef != want {
                return fail(format!("[e{}, f{}]", i + 1, j + 1));
            }
            if i != j {
                let times = (1 - cartan(i, j)) as usize;
                let mut ad_e = e(j).clone();
                let mut ad_f = f(j).clone();
                for _ in 0..times {
                    ad_e = e(i).commutator(&ad_e);
                    ad_f = f(i).commutator(&ad_f);
                }
                if !ad_e.is_zero() || !ad_f.is_zero() {
                    return fail(format!("Serre relation for roots {}, {}", i + 1, j + 1));
                }
            }
        }
    }
    Ok(())
}

/// Residue-level shadow of a representation of `G̃ × SL(n-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueRep {
    pub n: usize,
    pub rank: usize,
    pub torus_gens: Vec<QMatrix>,
    pub sl_gens: Vec<QMatrix>,
    pub weight_on_scaling: Rational,
}

impl ResidueRep {
    pub fn new(
        n: usize,
        rank: usize,
        torus_gens: Vec<QMatrix>,
        sl_gens: Vec<QMatrix>,
        weight_on_scaling: Rational,
    ) -> Result<Self> {
        let sized = |m: &QMatrix| m.rows() == rank && m.cols() == rank;
        if !torus_gens.iter().chain(&sl_gens).all(sized) {
            return Err(Error::DimensionMismatch(format!("generators must be {rank}x{rank}")));
        }
        check_chevalley(&sl_gens, n)?;
        for (i, a) in torus_gens.iter().enumerate() {
            for (j, b) in torus_gens.iter().enumerate().skip(i + 1) {
                if !a.commutator(b).is_zero() {
                    return Err(Error::Invalid(format!("torus generators {i} and {j} do not commute")));
                }
            }
            if let Some(j) = sl_gens.iter().position(|s| !a.commutator(s).is_zero()) {
                return Err(Error::Invalid(format!(
                    "torus generator {i} does not commute with {}",
                    generator_name(j)
                )));
            }
        }
        Ok(ResidueRep { n, rank, torus_gens, sl_gens, weight_on_scaling })
    }

    /// A representation pulled back along the projection to `G̃`, so that the
    /// `SL(n-1)` factor acts trivially.
    pub fn pulled_back(n: usize, rank: usize, torus_gens: Vec<QMatrix>, weight: Rational) -> Result<Self> {
        let zero = QMatrix::zeros(rank, rank);
        ResidueRep::new(n, rank, torus_gens, vec![zero; 3 * n.saturating_sub(2)], weight)
    }

    /// Transport of the scaling weight across a castling with parameter `r`.
    pub fn transported(&self, r: usize) -> Result<Self> {
        let w = morita_rescale(r as i64, self.n as i64, &self.weight_on_scaling)?;
        Ok(ResidueRep { weight_on_scaling: w, ..self.clone() })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "rank": self.rank,
            "torusGens": self.torus_gens.iter().map(json::rat_matrix_to_json).collect::<Vec<_>>(),
            "slGens": self.sl_gens.iter().map(json::rat_matrix_to_json).collect::<Vec<_>>(),
            "weightOnScaling": json::rational_to_json(&self.weight_on_scaling),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let int = |k: &str| -> Result<usize> {
            v.get(k)
                .and_then(Value::as_u64)
                .map(|x| x as usize)
                .ok_or_else(|| Error::Parse(format!("residue rep needs integer \"{k}\"")))
        };
        let mats = |k: &str| -> Result<Vec<QMatrix>> {
            match v.get(k) {
                None => Ok(Vec::new()),
                Some(Value::Array(a)) => a.iter().map(json::rat_matrix_from_json).collect(),
                Some(_) => Err(Error::Parse(format!("\"{k}\" must be an array of matrices"))),
            }
        };
        let w = match v.get("weightOnScaling") {
            Some(x) => json::rational_from_json(x)?,
            None => Rational::default(),
        };
        ResidueRep::new(int("n")?, int("rank")?, mats("torusGens")?, mats("slGens")?, w)
    }
}

pub fn residual_sl_trivial(rep: &ResidueRep) -> bool {
    rep.sl_gens.iter().all(Matrix::is_zero)
}

/// The representation `φ(g, s, v) = ψ(s)` together with the generator that
/// witnesses its nontrivial residual action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonExtendable {
    pub rep: ResidueRep,
    pub generator: usize,
}

impl NonExtendable {
    pub fn generator_name(&self) -> String {
        generator_name(self.generator)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "rep": self.rep.to_json(),
            "residualSlTrivial": residual_sl_trivial(&self.rep),
            "generator": self.generator_name(),
            "matrix": json::rat_matrix_to_json(&self.rep.sl_gens[self.generator]),
        })
    }
}

pub fn gen_nonextendable(psi: &[QMatrix], n: usize, m: usize) -> Result<NonExtendable> {
    if n < 3 {
        return Err(Error::Invalid(format!("SL(n-1) is trivial for n = {n}")));
    }
    let zero = QMatrix::zeros(m, m);
    let rep = ResidueRep::new(n, m, vec![zero; n], psi.to_vec(), Rational::default())?;
    let generator = rep
        .sl_gens
        .iter()
        .position(|g| !g.is_zero())
        .ok_or_else(|| Error::Invalid("psi is identically zero; the connection would extend".into()))?;
    Ok(NonExtendable { rep, generator })
}
