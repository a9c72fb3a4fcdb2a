use logflat_core::algebra::rational::{self, q};
use logflat_core::birkhoff::football::EquivariantTransition;
use logflat_core::birkhoff::{
    birkhoff_factorize, extend_connection, factorization_to_json, football_split, splitting_type_rank_oracle,
    ConnectionData, Transition,
};
use logflat_core::castling::{
    castling_chain, castling_transform, check_chevalley, chevalley_fundamental, gen_nonextendable as generate,
    minor_product_divisor, minor_product_fields, minor_variable_names, sl2_adjoint, PrehomDescriptor,
};
use logflat_core::filtrations::{filtrations_from_json, simultaneous_split, SplitOutcome};
use logflat_core::jordan::{
    deligne_residue, is_semisimple, is_unipotent, jordan_chevalley, polynomial_in, quasi_unipotent_weights,
    well_behaved_check, Group,
};
use logflat_core::saito::{
    euler_check, flatness_check, lie_bracket, saito_check, structure_constants, LogConnection, SaitoSystem,
    SaitoWitness,
};
use logflat_core::{json, Error, Matrix, MultiPoly, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::{Input, Malformed, Options, Preset, Report};

fn disagree(what: &str) -> Malformed {
    Malformed(format!("oracle disagreement: {what}"))
}

fn text(r: &Rational) -> String {
    rational::to_text(r)
}

pub fn saito(input: &Input, opts: &Options) -> Result<Report, Malformed> {
    let sys = SaitoSystem::from_json(&input.value)?;
    let n = sys.dim();
    let v = saito_check(&sys);
    if opts.oracle && sys.saito_matrix().det_cofactor() != v.determinant {
        return Err(disagree("Bareiss and cofactor determinants differ"));
    }
    let witness = match &v.witness {
        None => Value::Null,
        Some(SaitoWitness::NotReduced(g)) => json!({"notReduced": json::poly_to_json(g, n)}),
        Some(SaitoWitness::NotLogarithmic(i)) => json!({"notLogarithmic": i}),
        Some(SaitoWitness::DeterminantMismatch(d)) => json!({"determinantMismatch": json::poly_to_json(d, n)}),
    };
    let mut lines = vec![format!("det = {}", v.determinant.display(&sys.vars))];
    match &v.unit {
        Some(u) => lines.push(format!("det = {} * f", text(u))),
        None => lines.push("det is not a constant multiple of f".into()),
    }
    match &v.witness {
        Some(SaitoWitness::NotReduced(g)) => lines.push(format!("f is not reduced: gcd(f, df) = {}", g.display(&sys.vars))),
        Some(SaitoWitness::NotLogarithmic(i)) => lines.push(format!("field {i} is not logarithmic along f")),
        Some(SaitoWitness::DeterminantMismatch(_)) | None => {}
    }
    Ok(Report {
        verdict: if v.free { "free" } else { "not-free" },
        affirmative: v.free,
        payload: json!({
            "free": v.free,
            "unit": v.unit.as_ref().map(text),
            "reduced": v.reduced,
            "determinant": json::poly_to_json(&v.determinant, n),
            "witness": witness,
        }),
        lines,
    })
}

/// Curvature of `(i, j)` at a point, with the bracket expanded in the frame
/// by solving the pointwise linear system.
fn curvature_at(conn: &LogConnection, pt: &[Rational], i: usize, j: usize) -> Option<Matrix<Rational>> {
    let fields = &conn.system.fields;
    let k = fields.len();
    let a = Matrix::from_fn(k, k, |r, c| fields[c].coeffs[r].eval(pt));
    let b = lie_bracket(&fields[i], &fields[j]).ok()?;
    let rhs: Vec<Rational> = b.coeffs.iter().map(|p| p.eval(pt)).collect();
    let c = a.solve(&rhs)?;
    let o: Vec<Matrix<Rational>> = conn.omegas.iter().map(|m| m.map(|p| p.eval(pt))).collect();
    let d = |f: usize, m: &Matrix<MultiPoly>| m.map(|p| fields[f].apply(p).eval(pt));
    let mut out = d(i, &conn.omegas[j]).sub(&d(j, &conn.omegas[i])).add(&o[i].commutator(&o[j]));
    for (ck, ok) in c.iter().zip(&o) {
        out = out.sub(&ok.scale(ck));
    }
    Some(out)
}

pub fn flat(input: &Input, opts: &Options) -> Result<Report, Malformed> {
    let conn = LogConnection::from_json(&input.value)?;
    structure_constants(&conn.system)?;
    let v = flatness_check(&conn)?;
    if opts.oracle && v.flat {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let n = conn.system.dim();
        let k = conn.omegas.len();
        for _ in 0..8 {
            let pt: Vec<Rational> = (0..n).map(|_| rational::frac(rng.gen_range(-9..=9), rng.gen_range(1..=4))).collect();
            for i in 0..k {
                for j in i + 1..k {
                    if curvature_at(&conn, &pt, i, j).is_some_and(|c| !c.is_zero()) {
                        return Err(disagree("nonzero curvature at a sample point"));
                    }
                }
            }
        }
    }
    let mut lines = vec![format!("rank {}, {} fields", conn.rank(), conn.omegas.len())];
    if let Some((i, j)) = v.witness {
        lines.push(format!("curvature of (delta_{i}, delta_{j}) is nonzero"));
    }
    Ok(Report {
        verdict: if v.flat { "flat" } else { "not-flat" },
        affirmative: v.flat,
        payload: json!({"flat": v.flat, "witness": v.witness.map(|(i, j)| vec![i, j])}),
        lines,
    })
}

pub fn jc(input: &Input, opts: &Options) -> Result<Report, Malformed> {
    let m = json::rat_matrix_from_json(input.value.get("matrix").unwrap_or(&input.value))?;
    if !m.is_square() {
        return Err(Malformed("matrix is not square".into()));
    }
    let pair = match jordan_chevalley(&m) {
        Ok(p) => p,
        Err(Error::Singular) => {
            return Ok(Report {
                verdict: "singular",
                affirmative: false,
                payload: json!({"singular": true, "det": "0"}),
                lines: vec!["det M = 0: no multiplicative decomposition".into()],
            })
        }
        Err(e) => return Err(e.into()),
    };
    if opts.oracle
        && !(pair.s.mul(&pair.u) == m
            && pair.u.mul(&pair.s) == m
            && is_semisimple(&pair.s)
            && is_unipotent(&pair.u)
            && polynomial_in(&pair.s, &m).is_some())
    {
        return Err(disagree("decomposition fails re-verification"));
    }
    let mut payload = json!({
        "S": json::rat_matrix_to_json(&pair.s),
        "U": json::rat_matrix_to_json(&pair.u),
    });
    let mut lines = vec![
        format!("S = {}", json::rat_matrix_to_json(&pair.s)),
        format!("U = {}", json::rat_matrix_to_json(&pair.u)),
    ];
    match quasi_unipotent_weights(&pair.s) {
        Ok(w) => {
            let residue = deligne_residue(&m)?;
            let weights: Vec<String> = w.weights().iter().map(text).collect();
            lines.push(format!("weights {}", weights.join(", ")));
            payload["quasiUnipotent"] = json!(true);
            payload["weights"] = json!(weights);
            payload["nilpotent"] = json::rat_matrix_to_json(&residue.nilpotent);
            if m.det() == q(1) {
                let wb = well_behaved_check(&pair.s, Group::SL)?;
                lines.push(format!("central logarithm in SL: {wb}"));
                payload["wellBehavedSL"] = json!(wb);
            }
        }
        Err(Error::NotQuasiUnipotent(f)) => {
            lines.push(format!("not quasi-unipotent: factor {f}"));
            payload["quasiUnipotent"] = json!(false);
            payload["factor"] = json!(f);
        }
        Err(e) => return Err(e.into()),
    }
    Ok(Report { verdict: "decomposed", affirmative: true, payload, lines })
}

pub fn split(input: &Input, opts: &Options) -> Result<Report, Malformed> {
    let fs = filtrations_from_json(&input.value)?;
    if fs.is_empty() {
        return Err(Malformed("no filtrations given".into()));
    }
    Ok(match simultaneous_split(&fs)? {
        SplitOutcome::Split(b) => {
            if opts.oracle && !b.verify(&fs) {
                return Err(disagree("adapted basis fails re-verification"));
            }
            Report {
                verdict: "splittable",
                affirmative: true,
                payload: b.to_json(),
                lines: b.vectors.iter().map(|v| format!("{}", logflat_core::filtrations::vector_to_json(v))).collect(),
            }
        }
        SplitOutcome::NotSplittable(c) => Report {
            verdict: "not-splittable",
            affirmative: false,
            lines: vec![format!(
                "graded pieces have total dimension {} > {} (first overlap at {:?})",
                c.graded_total, c.ambient, c.index
            )],
            payload: c.to_json(),
        },
    })
}

pub fn birkhoff(input: &Input, opts: &Options) -> Result<Report, Malformed> {
    let t = Transition::from_json(&input.value)?;
    let f = birkhoff_factorize(&t);
    if opts.oracle
        && !(f.product() == *t.matrix() && f.factors_are_valid() && splitting_type_rank_oracle(&t) == f.splitting_type())
    {
        return Err(disagree("factorization fails re-verification"));
    }
    let ty = f.splitting_type().0;
    let mut payload = factorization_to_json(&f);
    payload["splittingType"] = json!(ty);
    Ok(Report {
        verdict: "factorized",
        affirmative: true,
        lines: vec![format!("splitting type {ty:?}")],
        payload,
    })
}

pub fn football(input: &Input, opts: &Options) -> Result<Report, Malformed> {
    let et = EquivariantTransition::from_json(&input.value)?;
    let s = football_split(&et)?;
    if opts.oracle && !(s.consistent_with(&et) && s.factorization.product() == *et.transition.matrix()) {
        return Err(disagree("football splitting fails re-verification"));
    }
    let mut payload = factorization_to_json(&s.factorization);
    payload["classes"] = json!(s.classes);
    Ok(Report {
        verdict: "factorized",
        affirmative: true,
        lines: vec![format!("classes {:?} on P({}, {})", s.classes, et.p, et.q)],
        payload,
    })
}

pub fn extend(input: &Input, opts: &Options) -> Result<Report, Malformed> {
    let data = ConnectionData::from_json(&input.value)?;
    let ext = match extend_connection(&data) {
        Ok(e) => e,
        Err(Error::NotQuasiUnipotent(f)) => {
            return Ok(Report {
                verdict: "not-quasi-unipotent",
                affirmative: false,
                payload: json!({"extends": false, "factor": f}),
                lines: vec![format!("residue has non-rational eigenvalues: factor {f}")],
            })
        }
        Err(e) => return Err(e.into()),
    };
    if opts.oracle && !(flatness_check(&ext.connection)?.flat && ext.restricts_to(&data)?) {
        return Err(disagree("extension fails re-verification"));
    }
    let mut payload = ext.to_json();
    payload["extends"] = json!(true);
    Ok(Report {
        verdict: "extends",
        affirmative: true,
        lines: vec![format!("global frame classes {:?}", ext.classes)],
        payload,
    })
}

fn descriptor_json(d: &PrehomDescriptor) -> Value {
    let mut v = d.to_json();
    v["ambient"] = json!(d.ambient_dim());
    v["group"] = json!(d.group().iter().map(|g| g.to_string()).collect::<Vec<_>>());
    v["moritaFactor"] = json!(text(&d.morita_factor()));
    v
}

pub fn castle(input: &Input, steps: usize, opts: &Options) -> Result<Report, Malformed> {
    let d = PrehomDescriptor::from_json(&input.value)?;
    let chain = castling_chain(&d, steps);
    if opts.oracle && chain.iter().any(|c| castling_transform(&castling_transform(c)) != *c) {
        return Err(disagree("castling is not an involution"));
    }
    let dims: Vec<usize> = chain.iter().map(PrehomDescriptor::ambient_dim).collect();
    Ok(Report {
        verdict: "castled",
        affirmative: true,
        lines: chain.iter().map(|c| c.to_string()).collect(),
        payload: json!({"dims": dims, "chain": chain.iter().map(descriptor_json).collect::<Vec<_>>()}),
    })
}

pub fn gen_divisor(n: usize, opts: &Options) -> Result<Report, Malformed> {
    let f = minor_product_divisor(n)?;
    let names = minor_variable_names(n);
    let dim = names.len();
    let sys = SaitoSystem::with_names(names.clone(), minor_product_fields(n)?, f.clone())?;
    if opts.oracle {
        let want = q((n * (n - 1)) as i64);
        if euler_check(&f, &vec![1; dim])? != Some(want) {
            return Err(disagree("divisor is not homogeneous of degree n(n-1)"));
        }
        if n <= 3 && !saito_check(&sys).free {
            return Err(disagree("Saito criterion fails for the minor product"));
        }
    }
    Ok(Report {
        verdict: "generated",
        affirmative: true,
        lines: vec![format!("f = {}", f.display(&names))],
        payload: json!({"n": n, "degree": f.total_degree(), "divisor": json::poly_to_json(&f, dim), "system": sys.to_json()}),
    })
}

pub fn preset_psi(p: Preset, n: usize) -> Value {
    let gens = match p {
        Preset::Fundamental => chevalley_fundamental(n.saturating_sub(1)),
        Preset::Adjoint => sl2_adjoint(),
    };
    json!({"n": n, "psi": gens.iter().map(json::rat_matrix_to_json).collect::<Vec<_>>()})
}

pub fn gen_nonextendable(value: &Value, opts: &Options) -> Result<Report, Malformed> {
    let n = value.get("n").and_then(Value::as_u64).ok_or_else(|| Malformed("missing integer \"n\"".into()))? as usize;
    let psi = value
        .get("psi")
        .and_then(Value::as_array)
        .ok_or_else(|| Malformed("missing \"psi\" array".into()))?
        .iter()
        .map(json::rat_matrix_from_json)
        .collect::<logflat_core::Result<Vec<_>>>()?;
    let m = psi.first().map_or(0, Matrix::rows);
    if !psi.is_empty() && psi.iter().all(Matrix::is_zero) {
        return Ok(Report {
            verdict: "extendable",
            affirmative: false,
            payload: json!({"residualSlTrivial": true}),
            lines: vec!["psi is identically zero: the residual action is trivial".into()],
        });
    }
    let cert = generate(&psi, n, m)?;
    if opts.oracle && check_chevalley(&cert.rep.sl_gens, n).is_err() {
        return Err(disagree("Chevalley relations fail"));
    }
    Ok(Report {
        verdict: "non-extendable",
        affirmative: true,
        lines: vec![format!("residual SL({}) action is nontrivial: {} != 0", n - 1, cert.generator_name())],
        payload: cert.to_json(),
    })
}
