//! Tuples of decreasing Z-filtrations of Q^m and simultaneous splitting.

use serde_json::{json, Value};

use crate::algebra::rational::Rational;
use crate::algebra::Matrix;
use crate::error::{Error, Result};
use crate::json;

pub type Vector = Vec<Rational>;

/// A subspace of `Q^m`, stored by its reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    pub fn span(ambient: usize, vectors: &[Vector]) -> Result<Self> {
        if vectors.iter().any(|v| v.len() != ambient) {
            return Err(Error::DimensionMismatch(format!("vectors must have length {ambient}")));
        }
        Ok(Subspace::span_unchecked(ambient, vectors))
    }

    fn span_unchecked(ambient: usize, vectors: &[Vector]) -> Self {
        if vectors.is_empty() {
            return Subspace::zero(ambient);
        }
        let e = Matrix::from_rows(vectors.to_vec()).echelon();
        Subspace { ambient, basis: e.rref.to_rows() }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::<Rational>::identity(ambient).to_rows() }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Matrix::from_rows(rows).rank() == self.dim()
    }

    pub fn contains_space(&self, o: &Subspace) -> bool {
        o.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, o: &Subspace) -> Subspace {
        let mut rows = self.basis.clone();
        rows.extend(o.basis.iter().cloned());
        Subspace::span_unchecked(self.ambient, &rows)
    }

    pub fn intersect(&self, o: &Subspace) -> Subspace {
        if self.dim() == 0 || o.dim() == 0 {
            return Subspace::zero(self.ambient);
        }
        let (a, b) = (self.dim(), o.dim());
        // Kernel of [U; -W]^T gives pairs (x, y) with xU = yW.
        let m = Matrix::from_fn(self.ambient, a + b, |r, c| {
            if c < a {
                self.basis[c][r].clone()
            } else {
                -o.basis[c - a][r].clone()
            }
        });
        let vecs: Vec<Vector> = m
            .kernel()
            .into_iter()
            .map(|k| {
                (0..self.ambient)
                    .map(|r| (0..a).map(|i| &k[i] * &self.basis[i][r]).sum())
                    .collect()
            })
            .collect();
        Subspace::span_unchecked(self.ambient, &vecs)
    }

    /// Vectors of `self` completing a basis of `sub ⊆ self` to one of `self`.
    pub fn complement_of(&self, sub: &Subspace) -> Vec<Vector> {
        let mut current = sub.clone();
        let mut out = Vec::new();
        for v in &self.basis {
            if !current.contains(v) {
                current = current.sum(&Subspace::span_unchecked(self.ambient, std::slice::from_ref(v)));
                out.push(v.clone());
            }
        }
        out
    }
}

/// `F^j = V` below the first listed index, `F^j` equal to the subspace at
/// the smallest listed index `≥ j` in between, and `0` above the last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    ambient: usize,
    steps: Vec<(i64, Subspace)>,
}

impl Filtration {
    pub fn new(ambient: usize, mut steps: Vec<(i64, Subspace)>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::Invalid("a filtration needs at least one step".into()));
        }
        if steps.iter().any(|(_, s)| s.ambient != ambient) {
            return Err(Error::DimensionMismatch(format!("subspaces must live in Q^{ambient}")));
        }
        steps.sort_by_key(|(j, _)| *j);
        for w in steps.windows(2) {
            let ((j0, a), (j1, b)) = (&w[0], &w[1]);
            if j0 == j1 {
                return Err(Error::Invalid(format!("index {j0} listed twice")));
            }
            if !a.contains_space(b) || a == b {
                return Err(Error::Invalid(format!("step at {j1} is not a proper subspace of the step at {j0}")));
            }
        }
        Ok(Filtration { ambient, steps })
    }

    /// One-step filtration: `V` for `j < j0`, `W` at `j0`, `0` above.
    pub fn one_step(j0: i64, w: Subspace) -> Self {
        let ambient = w.ambient;
        Filtration { ambient, steps: vec![(j0, w)] }
    }

    /// Builds from a descending chain of spans; `steps[i] = (j_i, vectors)`.
    pub fn from_spans(ambient: usize, steps: &[(i64, Vec<Vector>)]) -> Result<Self> {
        let steps = steps
            .iter()
            .map(|(j, vs)| Ok((*j, Subspace::span(ambient, vs)?)))
            .collect::<Result<Vec<_>>>()?;
        Filtration::new(ambient, steps)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn steps(&self) -> &[(i64, Subspace)] {
        &self.steps
    }

    pub fn min_index(&self) -> i64 {
        self.steps[0].0
    }

    pub fn max_index(&self) -> i64 {
        self.steps.last().unwrap().0
    }

    pub fn at(&self, j: i64) -> Subspace {
        if j < self.min_index() {
            return Subspace::full(self.ambient);
        }
        match self.steps.iter().find(|(k, _)| *k >= j) {
            Some((_, s)) => s.clone(),
            None => Subspace::zero(self.ambient),
        }
    }

    /// `j_min - 1` followed by every listed index: the levels where `F^j`
    /// can differ from `F^{j+1}`.
    pub fn levels(&self) -> Vec<i64> {
        std::iter::once(self.min_index() - 1).chain(self.steps.iter().map(|(j, _)| *j)).collect()
    }

    /// Largest `j` with `v ∈ F^j`, for nonzero `v`.
    pub fn depth(&self, v: &[Rational]) -> i64 {
        let mut d = self.min_index() - 1;
        for (j, s) in &self.steps {
            if s.contains(v) {
                d = *j;
            } else {
                break;
            }
        }
        d
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.steps
                .iter()
                .map(|(j, s)| json!({"j": j, "basis": s.basis.iter().map(|v| v.iter().map(json::rational_to_json).collect::<Vec<_>>()).collect::<Vec<_>>()}))
                .collect(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdaptedBasis {
    pub vectors: Vec<Vector>,
    /// `depths[i][k]`: depth of vector `i` in filtration `k`.
    pub depths: Vec<Vec<i64>>,
}

impl AdaptedBasis {
    /// Re-checks the invariants from scratch: the vectors form a basis, the
    /// recorded depths are the true depths, and for every filtration and
    /// level the vectors of depth `≥ j` span `F^j`.
    pub fn verify(&self, fs: &[Filtration]) -> bool {
        let Some(m) = fs.first().map(Filtration::ambient) else {
            return false;
        };
        if self.vectors.len() != m || self.depths.len() != m {
            return false;
        }
        if m > 0 && Matrix::from_rows(self.vectors.clone()).rank() != m {
            return false;
        }
        for (k, f) in fs.iter().enumerate() {
            if self.vectors.iter().zip(&self.depths).any(|(v, d)| d.get(k) != Some(&f.depth(v))) {
                return false;
            }
            for j in f.min_index() - 1..=f.max_index() + 1 {
                let vs: Vec<Vector> = self
                    .vectors
                    .iter()
                    .zip(&self.depths)
                    .filter(|(_, d)| d[k] >= j)
                    .map(|(v, _)| v.clone())
                    .collect();
                if Subspace::span_unchecked(m, &vs) != f.at(j) {
                    return false;
                }
            }
        }
        true
    }
}

/// A multi-index where the graded pieces overlap, with the table of
/// multi-intersection dimensions `dim ∩_k F_k^{j_k}` over all level profiles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotSplittable {
    pub index: Vec<i64>,
    /// `Σ_d dim(W(d) / Σ_k W(d + e_k))`; exceeds the ambient dimension.
    pub graded_total: usize,
    pub ambient: usize,
    pub table: Vec<(Vec<i64>, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplitOutcome {
    Split(AdaptedBasis),
    NotSplittable(NotSplittable),
}

fn check_common(fs: &[Filtration]) -> Result<usize> {
    let m = fs.first().ok_or_else(|| Error::Invalid("no filtrations given".into()))?.ambient;
    if fs.iter().any(|f| f.ambient != m) {
        return Err(Error::DimensionMismatch("filtrations live in different ambient spaces".into()));
    }
    Ok(m)
}

/// All level profiles, in decreasing order of total position.
fn profiles(levels: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for l in levels {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..l.len()).map(move |i| {
                    let mut q = p.clone();
                    q.push(i);
                    q
                })
            })
            .collect();
    }
    out.sort_by(|a, b| {
        let sa: usize = a.iter().sum();
        let sb: usize = b.iter().sum();
        sb.cmp(&sa).then_with(|| b.cmp(a))
    });
    out
}

/// Decides simultaneous splittability. For each level profile `d`, let
/// `W(d) = ∩ F_k^{d_k}` and `L(d) = Σ_k W(d + e_k)`. The tuple splits iff
/// `Σ dim W(d)/L(d) = m`; then complements of `L(d)` in `W(d)`, taken over
/// all `d`, form an adapted basis with depth profile `d`.
pub fn simultaneous_split(fs: &[Filtration]) -> Result<SplitOutcome> {
    let m = check_common(fs)?;
    let levels: Vec<Vec<i64>> = fs.iter().map(Filtration::levels).collect();
    let ps = profiles(&levels);
    let w_of = |p: &[usize]| -> Subspace {
        // Index past the last level means the zero subspace.
        let mut s = Subspace::full(m);
        for (k, &i) in p.iter().enumerate() {
            let f = if i < levels[k].len() { fs[k].at(levels[k][i]) } else { Subspace::zero(m) };
            s = s.intersect(&f);
            if s.dim() == 0 {
                break;
            }
        }
        s
    };
    let mut table = Vec::with_capacity(ps.len());
    let mut vectors = Vec::new();
    let mut depths = Vec::new();
    let mut spanned = Subspace::zero(m);
    let mut graded_total = 0;
    let mut first_overlap: Option<Vec<i64>> = None;
    for p in &ps {
        let w = w_of(p);
        let idx: Vec<i64> = p.iter().enumerate().map(|(k, &i)| levels[k][i]).collect();
        table.push((idx.clone(), w.dim()));
        if w.dim() == 0 {
            continue;
        }
        let mut l = Subspace::zero(m);
        for k in 0..p.len() {
            let mut q = p.clone();
            q[k] += 1;
            l = l.sum(&w_of(&q));
        }
        let c = w.complement_of(&l);
        graded_total += c.len();
        for v in c {
            let before = spanned.dim();
            spanned = spanned.sum(&Subspace::span_unchecked(m, std::slice::from_ref(&v)));
            if spanned.dim() == before {
                first_overlap.get_or_insert_with(|| idx.clone());
            }
            vectors.push(v);
            depths.push(idx.clone());
        }
    }
    if graded_total == m && first_overlap.is_none() {
        return Ok(SplitOutcome::Split(AdaptedBasis { vectors, depths }));
    }
    table.sort();
    Ok(SplitOutcome::NotSplittable(NotSplittable {
        index: first_overlap.expect("excess graded pieces force an overlap"),
        graded_total,
        ambient: m,
        table,
    }))
}

/// Pairs always split.
pub fn split_pair(f1: &Filtration, f2: &Filtration) -> Result<AdaptedBasis> {
    match simultaneous_split(&[f1.clone(), f2.clone()])? {
        SplitOutcome::Split(b) => Ok(b),
        SplitOutcome::NotSplittable(_) => unreachable!("pairs of filtrations always split"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricVerdict {
    pub extends: bool,
    pub witness: SplitOutcome,
}

pub fn toric_extendability(fs: &[Filtration]) -> Result<ToricVerdict> {
    let witness = simultaneous_split(fs)?;
    Ok(ToricVerdict { extends: matches!(witness, SplitOutcome::Split(_)), witness })
}

/// Parses `{"dim": m, "filtrations": [[{"j": .., "basis": [[..]]}, ..], ..]}`.
pub fn filtrations_from_json(v: &Value) -> Result<Vec<Filtration>> {
    let m = v
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("missing integer \"dim\"".into()))? as usize;
    let fs = v
        .get("filtrations")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing \"filtrations\" array".into()))?;
    fs.iter()
        .map(|f| {
            let steps = f
                .as_array()
                .ok_or_else(|| Error::Parse("a filtration must be an array of steps".into()))?
                .iter()
                .map(|s| {
                    let j = s.get("j").and_then(Value::as_i64).ok_or_else(|| Error::Parse("step needs integer \"j\"".into()))?;
                    let basis = s
                        .get("basis")
                        .and_then(Value::as_array)
                        .ok_or_else(|| Error::Parse("step needs \"basis\"".into()))?
                        .iter()
                        .map(|row| {
                            row.as_array()
                                .ok_or_else(|| Error::Parse("basis vector must be an array".into()))?
                                .iter()
                                .map(json::rational_from_json)
                                .collect::<Result<Vector>>()
                        })
                        .collect::<Result<Vec<_>>>()?;
                    Ok((j, basis))
                })
                .collect::<Result<Vec<_>>>()?;
            Filtration::from_spans(m, &steps)
        })
        .collect()
}

pub fn filtrations_to_json(fs: &[Filtration]) -> Value {
    json!({
        "dim": fs.first().map_or(0, Filtration::ambient),
        "filtrations": fs.iter().map(Filtration::to_json).collect::<Vec<_>>(),
    })
}

pub fn vector_to_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(json::rational_to_json).collect())
}

impl AdaptedBasis {
    pub fn to_json(&self) -> Value {
        json!({
            "vectors": self.vectors.iter().map(|v| vector_to_json(v)).collect::<Vec<_>>(),
            "depths": self.depths,
        })
    }
}

impl NotSplittable {
    pub fn to_json(&self) -> Value {
        json!({
            "index": self.index,
            "gradedTotal": self.graded_total,
            "ambient": self.ambient,
            "table": self.table.iter().map(|(i, d)| json!({"index": i, "dim": d})).collect::<Vec<_>>(),
        })
    }
}
