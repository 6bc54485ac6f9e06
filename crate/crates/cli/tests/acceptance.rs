//! Acceptance suite. Each criterion prints one PASS or FAIL line; the process
//! exits nonzero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::TAU;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use foliation_cli::builtin::WORKED_EXAMPLE_FORM;
use foliation_cli::config::Config;
use foliation_cli::run;
use foliation_core::dynamics::{
    averaging_operator_norm, harmonic_space, haar_probes, plane_rotation, GeneratorImages, DEFAULT_POWER_ITERS,
    DEFAULT_POWER_TOL,
};
use foliation_core::exactnum::{EmbeddingId, Matrix, NumberField, QuadElement, Rational};
use foliation_core::groupcoh::{bundled_corpus, h1_dimension, MatrixRep, Presentation};
use foliation_core::liealg::builders::{abelian, affine_line, direct_sum, heisenberg, so, so3};
use foliation_core::liealg::io::parse_structure;
use foliation_core::liealg::{ce_cohomology, ce_differential, detect_so3_factor, simple_decomposition, LieAlgebra, DEFAULT_CE_BUDGET};
use foliation_core::qform::{
    galois_embed_element, inverse, parse_form, plane_rotation_search, product, reflection_pair, OrthogonalElement,
    QuadraticForm,
};
use foliation_core::suspension::{invariance_residual, mc_residual, ChartKind, MCChart};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

// ---------- independent exact linear algebra ----------

fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        let prow: Vec<Rational> = rows[r].iter().map(|x| x / &pivot).collect();
        for i in (r + 1)..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone();
            for (x, y) in rows[i].iter_mut().zip(&prow).skip(c) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        rows[r] = prow;
        r += 1;
    }
    r
}

fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(Rational::zero(), |s, k| s + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

fn identity(d: usize) -> Vec<Vec<Rational>> {
    (0..d).map(|i| (0..d).map(|j| if i == j { q(1) } else { q(0) }).collect()).collect()
}

fn gauss_jordan_inverse(m: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let d = m.len();
    let mut aug: Vec<Vec<Rational>> = m
        .iter()
        .zip(identity(d))
        .map(|(r, e)| r.iter().cloned().chain(e).collect())
        .collect();
    for c in 0..d {
        let p = (c..d).find(|&i| !aug[i][c].is_zero()).expect("invertible");
        aug.swap(c, p);
        let pivot = aug[c][c].clone();
        for x in aug[c].iter_mut() {
            *x /= &pivot;
        }
        let prow = aug[c].clone();
        for (i, row) in aug.iter_mut().enumerate() {
            if i != c && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= &f * y;
                }
            }
        }
    }
    aug.into_iter().map(|r| r[d..].to_vec()).collect()
}

// ---------- criterion 1: structure-constant validation ----------

type Entry = (usize, usize, usize, Rational);

fn entries_of(g: &LieAlgebra) -> Vec<Entry> {
    let n = g.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in 0..n {
                let c = g.c(i, j, k);
                if !c.is_zero() {
                    out.push((i, j, k, c.clone()));
                }
            }
        }
    }
    out
}

/// File semantics: each entry sets `c_ij^k`, its partner `c_ji^k` is implied,
/// repeated constants must agree and unlisted constants are zero.
fn oracle_tensor(dim: usize, entries: &[Entry]) -> Option<Vec<Vec<Vec<Rational>>>> {
    let mut set: BTreeMap<(usize, usize, usize), Rational> = BTreeMap::new();
    for (i, j, k, c) in entries {
        if *i >= dim || *j >= dim || *k >= dim {
            return None;
        }
        if i == j && !c.is_zero() {
            return None;
        }
        for (key, val) in [((*i, *j, *k), c.clone()), ((*j, *i, *k), -c.clone())] {
            match set.get(&key) {
                Some(prev) if *prev != val => return None,
                _ => {
                    set.insert(key, val);
                }
            }
        }
    }
    let mut t = vec![vec![vec![q(0); dim]; dim]; dim];
    for ((i, j, k), c) in set {
        t[i][j][k] = c;
    }
    Some(t)
}

fn oracle_valid(dim: usize, entries: &[Entry]) -> bool {
    let Some(t) = oracle_tensor(dim, entries) else {
        return false;
    };
    // sum over cyclic permutations of [[x_a, x_b], x_c], every ordered triple
    for a in 0..dim {
        for b in 0..dim {
            for c in 0..dim {
                for l in 0..dim {
                    let mut s = q(0);
                    for m in 0..dim {
                        for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                            if !t[x][y][m].is_zero() && !t[m][z][l].is_zero() {
                                s += &t[x][y][m] * &t[m][z][l];
                            }
                        }
                    }
                    if !s.is_zero() {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn structure_json(dim: usize, entries: &[Entry]) -> String {
    let rows: Vec<Value> = entries.iter().map(|(i, j, k, c)| json!([i, j, k, c.to_string()])).collect();
    json!({"dim": dim, "brackets": rows}).to_string()
}

fn random_coeff(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let p = rng.random_range(-5i64..=5);
        let d = rng.random_range(1i64..=3);
        if p != 0 {
            return Rational::new(BigInt::from(p), BigInt::from(d));
        }
    }
}

fn mutate(rng: &mut ChaCha8Rng, dim: usize, base: &[Entry]) -> (&'static str, Vec<Entry>) {
    let mut e = base.to_vec();
    let pick = rng.random_range(0..e.len());
    let kind = rng.random_range(0..9);
    let name = match kind {
        0 => {
            let f = loop {
                let f = random_coeff(rng);
                if !f.is_one() {
                    break f;
                }
            };
            e[pick].3 *= f;
            "rescale"
        }
        1 => {
            e[pick].2 = (e[pick].2 + rng.random_range(1..dim)) % dim;
            "retarget"
        }
        2 => {
            let i = rng.random_range(0..dim);
            let j = (i + rng.random_range(1..dim)) % dim;
            e.push((i, j, rng.random_range(0..dim), random_coeff(rng)));
            "insert"
        }
        3 => {
            let i = rng.random_range(0..dim);
            e.push((i, i, rng.random_range(0..dim), random_coeff(rng)));
            "diagonal"
        }
        4 => {
            let (i, j, k, c) = e[pick].clone();
            e.push((j, i, k, c));
            "partner_sign"
        }
        5 => {
            e.remove(pick);
            "delete"
        }
        6 => {
            let (i, j, k, c) = e[pick].clone();
            e.push((i, j, k, c + random_coeff(rng)));
            "duplicate"
        }
        7 => {
            e[pick].1 = dim + rng.random_range(0..3);
            "out_of_range"
        }
        _ => {
            let (i, j, k, c) = e[pick].clone();
            e[pick] = (j, i, k, c);
            "swap"
        }
    };
    (name, e)
}

// ---------- criterion 2: cochain complex oracle ----------

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Matrix of `d: Lambda^k g* -> Lambda^{k+1} g*`, rows indexed by
/// `(k+1)`-subsets, from `(d w)(x_0..x_k) = sum_{a<b} (-1)^{a+b} w([x_a, x_b], ...)`.
fn oracle_differential(g: &LieAlgebra, k: usize) -> Vec<Vec<Rational>> {
    let n = g.dim();
    let domain = k_subsets(n, k);
    let index: BTreeMap<Vec<usize>, usize> = domain.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    k_subsets(n, k + 1)
        .iter()
        .map(|t| {
            let mut row = vec![q(0); domain.len()];
            for a in 0..t.len() {
                for b in (a + 1)..t.len() {
                    let rest: Vec<usize> = t.iter().enumerate().filter(|(p, _)| *p != a && *p != b).map(|(_, x)| *x).collect();
                    for m in 0..n {
                        let c = g.c(t[a], t[b], m);
                        if c.is_zero() || rest.contains(&m) {
                            continue;
                        }
                        let below = rest.iter().filter(|&&x| x < m).count();
                        let mut s: Vec<usize> = rest.clone();
                        s.push(m);
                        s.sort_unstable();
                        let sign = if (a + b + below) % 2 == 0 { q(1) } else { q(-1) };
                        row[index[&s]] += sign * c;
                    }
                }
            }
            row
        })
        .collect()
}

fn oracle_betti(g: &LieAlgebra) -> Vec<usize> {
    let n = g.dim();
    let ranks: Vec<usize> = (0..=n).map(|k| if k == n { 0 } else { rank(oracle_differential(g, k)) }).collect();
    (0..=n)
        .map(|k| k_subsets(n, k).len() - ranks[k] - if k > 0 { ranks[k - 1] } else { 0 })
        .collect()
}

// ---------- criterion 8: crossed homomorphism solver ----------

struct Brute {
    z1: usize,
    b1: usize,
}

fn mat_vec(m: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|r| r.iter().zip(v).fold(q(0), |s, (a, b)| s + a * b))
        .collect()
}

fn brute_h1(pres: &Presentation, gens: &[Vec<Vec<Rational>>]) -> Brute {
    let s = gens.len();
    let d = gens[0].len();
    let invs: Vec<Vec<Vec<Rational>>> = gens.iter().map(|m| gauss_jordan_inverse(m)).collect();
    let unknowns = s * d;
    // constraint rows: psi(relator) = 0, linear in the generator values
    let mut columns: Vec<Vec<Rational>> = Vec::new();
    for u in 0..unknowns {
        let mut values = vec![vec![q(0); d]; s];
        values[u / d][u % d] = q(1);
        let mut col = Vec::new();
        for word in pres.relators() {
            let mut acc = vec![q(0); d];
            let mut prefix = identity(d);
            for l in word {
                let (step, mat) = if l.inverse {
                    let neg: Vec<Rational> = mat_vec(&invs[l.generator], &values[l.generator]).into_iter().map(|x| -x).collect();
                    (neg, &invs[l.generator])
                } else {
                    (values[l.generator].clone(), &gens[l.generator])
                };
                for (a, b) in acc.iter_mut().zip(mat_vec(&prefix, &step)) {
                    *a += b;
                }
                prefix = mat_mul(&prefix, mat);
            }
            col.extend(acc);
        }
        columns.push(col);
    }
    let rows = columns.first().map_or(0, Vec::len);
    let constraint: Vec<Vec<Rational>> = (0..rows).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect();
    let z1 = unknowns - if rows == 0 { 0 } else { rank(constraint) };
    // coboundaries v -> (pi(g_i) v - v)_i
    let mut cob = Vec::new();
    for g in gens {
        for (i, row) in g.iter().enumerate() {
            cob.push(row.iter().enumerate().map(|(j, x)| if i == j { x - q(1) } else { x.clone() }).collect());
        }
    }
    Brute { z1, b1: rank(cob) }
}

fn to_rows(m: &Matrix<Rational>) -> Vec<Vec<Rational>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m[(i, j)].clone()).collect()).collect()
}

// ---------- criterion 5: exact membership ----------

fn qd(a: i64, b: i64) -> QuadElement {
    QuadElement::from_ints(a, b)
}

fn exact_member(m: &Matrix<QuadElement>, a: &Matrix<QuadElement>) -> bool {
    let preserves = m.transpose().matmul(a).matmul(m) == *a;
    let det_one = m.determinant().map(|d| d == qd(1, 0)).unwrap_or(false);
    let integral = m.data().iter().all(|x| x.a.is_integer() && x.b.is_integer());
    preserves && det_one && integral
}

fn worked_form() -> QuadraticForm<QuadElement> {
    parse_form(WORKED_EXAMPLE_FORM).unwrap().into_sqrt2().unwrap()
}

// ---------- criteria ----------

fn criterion_1() -> Outcome {
    let bases: Vec<(&str, LieAlgebra)> = vec![
        ("so3", so3()),
        ("so4", so(4)),
        ("so5", so(5)),
        ("heisenberg", heisenberg()),
        ("affine", affine_line()),
        ("so3+heis", direct_sum(&[so3(), heisenberg()])),
    ];
    for (name, g) in &bases {
        let e = entries_of(g);
        ensure(oracle_valid(g.dim(), &e), format!("oracle rejects unmutated {name}"))?;
        ensure(parse_structure(&structure_json(g.dim(), &e)).is_ok(), format!("validator rejects unmutated {name}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let mut kinds: BTreeMap<&str, usize> = BTreeMap::new();
    let (mut cases, mut discarded) = (0, 0);
    while cases < 240 {
        let (name, g) = &bases[rng.random_range(0..bases.len())];
        let (kind, mutated) = mutate(&mut rng, g.dim(), &entries_of(g));
        if oracle_valid(g.dim(), &mutated) {
            discarded += 1;
            continue;
        }
        cases += 1;
        *kinds.entry(kind).or_default() += 1;
        if parse_structure(&structure_json(g.dim(), &mutated)).is_ok() {
            return Err(format!("{kind} mutation of {name} accepted: {}", structure_json(g.dim(), &mutated)));
        }
    }
    let zoo: Vec<(&str, LieAlgebra)> = vec![
        ("so3", so3()),
        ("so4", so(4)),
        ("so5", so(5)),
        ("heisenberg", heisenberg()),
        ("abelian4", abelian(4)),
    ];
    for (name, g) in &zoo {
        let n = g.dim();
        for k in 0..n.saturating_sub(1) {
            let dk = ce_differential(g, k, DEFAULT_CE_BUDGET).map_err(|e| e.to_string())?;
            let next = ce_differential(g, k + 1, DEFAULT_CE_BUDGET).map_err(|e| e.to_string())?;
            ensure(dk.composes_to_zero(&next), format!("d^2 != 0 on {name} at degree {k}"))?;
            let sq = mat_mul(&oracle_differential(g, k + 1), &oracle_differential(g, k));
            ensure(sq.iter().flatten().all(Zero::is_zero), format!("oracle d^2 != 0 on {name} at degree {k}"))?;
        }
    }
    Ok(format!(
        "{cases} invalid mutations all rejected ({discarded} valid ones skipped; kinds {kinds:?}); d^2 = 0 on 5 algebras"
    ))
}

fn criterion_2() -> Outcome {
    let cases: Vec<(&str, LieAlgebra, Vec<(usize, usize)>)> = vec![
        ("so3", so3(), vec![(1, 0), (3, 1)]),
        ("so4", so(4), vec![(1, 0)]),
        ("so5", so(5), vec![(1, 0)]),
        ("abelian2", abelian(2), vec![(1, 2)]),
        ("abelian3", abelian(3), vec![(1, 3)]),
        ("abelian5", abelian(5), vec![(1, 5)]),
        ("heisenberg", heisenberg(), vec![(1, 2)]),
    ];
    let mut summary = Vec::new();
    for (name, g, expected) in &cases {
        let betti = oracle_betti(g);
        for k in 0..=g.dim() {
            let lib = ce_cohomology(g, k, DEFAULT_CE_BUDGET).map_err(|e| e.to_string())?.dimension;
            ensure(lib == betti[k], format!("{name}: H^{k} library {lib} vs oracle {}", betti[k]))?;
        }
        for &(k, d) in expected {
            ensure(betti[k] == d, format!("{name}: H^{k} = {} expected {d}", betti[k]))?;
        }
        summary.push(format!("{name} {betti:?}"));
    }
    Ok(format!("all degrees match the oracle: {}", summary.join(", ")))
}

fn criterion_3() -> Outcome {
    let so4 = simple_decomposition(&so(4)).map_err(|e| e.to_string())?;
    ensure(so4.dims() == vec![3, 3], format!("so4 ideals {:?}", so4.dims()))?;
    ensure(detect_so3_factor(&so(4)).map_err(|e| e.to_string())?, "so4 factor not detected")?;
    let so5 = simple_decomposition(&so(5)).map_err(|e| e.to_string())?;
    ensure(so5.dims() == vec![10], format!("so5 ideals {:?}", so5.dims()))?;
    ensure(!detect_so3_factor(&so(5)).map_err(|e| e.to_string())?, "so5 factor detected")?;
    Ok("so4 -> [3, 3] with so(3) factor; so5 -> [10] without".into())
}

fn criterion_4() -> Outcome {
    let phi = worked_form();
    let expected = QuadraticForm::diagonal(&[qd(1, 0), qd(1, 0), qd(1, 0), qd(0, 1), qd(0, 1)]).unwrap();
    let conj = phi.conjugate(EmbeddingId(2)).map_err(|e| e.to_string())?;
    ensure(conj == expected, "conjugate form differs")?;
    let cls = phi.classify_embeddings(None).map_err(|e| e.to_string())?;
    let sig = |id: u8| cls.signatures.iter().find(|s| s.embedding == EmbeddingId(id)).and_then(|s| s.signature);
    ensure(sig(1) == Some((3, 2)) && sig(2) == Some((5, 0)), format!("signatures {:?} {:?}", sig(1), sig(2)))?;
    // second route: the form is diagonal, so signs of embedded diagonal entries
    for (id, want) in [(1u8, (3, 2)), (2, (5, 0))] {
        let signs: Vec<f64> = (0..5)
            .map(|i| phi.matrix()[(i, i)].embed_f64(EmbeddingId(id)).unwrap())
            .collect();
        let pos = signs.iter().filter(|x| **x > 0.0).count();
        ensure((pos, 5 - pos) == want, format!("diagonal signs under sigma{id}: {signs:?}"))?;
    }
    ensure(cls.definite_set == vec![EmbeddingId(2)], format!("definite set {:?}", cls.definite_set))?;
    ensure(cls.lattice_condition(), "lattice condition fails")?;
    ensure(phi.anisotropy_by_conjugate_definiteness(), "not certified anisotropic")?;
    ensure(
        foliation_core::qform::isotropic_witness(&phi, 1).is_none(),
        "isotropic vector found in the unit box",
    )?;
    Ok("conjugate form diag(1,1,1,r2,r2); signatures (3,2)/(5,0); T = {sigma2}; anisotropic".into())
}

fn criterion_5() -> Outcome {
    let phi = worked_form();
    let a = phi.matrix().clone();
    let mut found: Vec<OrthogonalElement<QuadElement>> = Vec::new();
    for i in 0..5 {
        for j in (i + 1)..5 {
            found.extend(plane_rotation_search(&phi, i, j, 10).map_err(|e| e.to_string())?);
        }
    }
    let searched = found.len();
    let e = |idx: &[(usize, i64)]| {
        let mut v = vec![qd(0, 0); 5];
        for &(i, c) in idx {
            v[i] = qd(c, 0);
        }
        v
    };
    let vectors = [
        e(&[(0, 1)]),
        e(&[(3, 1)]),
        e(&[(0, 1), (1, 1)]),
        e(&[(1, 1), (2, -1)]),
        e(&[(3, 1), (4, 1)]),
        e(&[(0, 1), (3, 1)]),
        e(&[(1, 1), (4, 1)]),
        e(&[(2, 1), (3, -1)]),
    ];
    for v in &vectors {
        for w in &vectors {
            if v != w {
                if let Ok(p) = reflection_pair(&phi, v, w) {
                    found.push(p);
                }
            }
        }
    }
    let pairs = found.len() - searched;
    ensure(pairs > 0, "no integral reflection pairs")?;
    for g in &found {
        ensure(g.certificate().passed(), "certificate failed")?;
        ensure(exact_member(g.matrix(), &a), "element fails exact membership")?;
    }
    let pool: Vec<OrthogonalElement<QuadElement>> = found
        .iter()
        .filter(|g| *g.matrix() != Matrix::identity(5))
        .flat_map(|g| [g.clone(), inverse(g, &phi)])
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let mut all = found.clone();
    for _ in 0..1000 {
        let len = rng.random_range(2..=6);
        let mut acc = pool[rng.random_range(0..pool.len())].clone();
        for _ in 1..len {
            acc = product(&acc, &pool[rng.random_range(0..pool.len())]);
        }
        ensure(exact_member(acc.matrix(), &a), "random product fails exact membership")?;
        all.push(acc);
    }
    let mut worst = 0.0f64;
    for g in &all {
        let img = galois_embed_element(g, &phi, EmbeddingId(2)).map_err(|e| e.to_string())?;
        worst = worst.max(img.residual);
    }
    ensure(worst <= 1e-12, format!("embedding residual {worst:e}"))?;
    Ok(format!(
        "{searched} search hits, {pairs} reflection pairs, 1000 random products exact; max residual {worst:.1e}"
    ))
}

fn forge_report(workers: usize) -> Result<(String, Value), String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let args = vec![
        "foliation".to_string(),
        "--out".into(),
        dir.path().display().to_string(),
        "--workers".into(),
        workers.to_string(),
        "forge".into(),
    ];
    let out = run(args, Vec::new()).map_err(|e| e.to_string())?;
    let on_disk = std::fs::read_to_string(dir.path().join("report.json")).map_err(|e| e.to_string())?;
    let value: Value = serde_json::from_str(&on_disk).map_err(|e| e.to_string())?;
    ensure(out.report == on_disk, "returned report differs from the written file")?;
    Ok((on_disk, value))
}

fn criterion_6(report: &Value) -> Outcome {
    let density = &report["result"]["dynamics"]["density"];
    let radii: Vec<u64> = serde_json::from_value(density["radii"].clone()).map_err(|e| e.to_string())?;
    ensure(radii == vec![1, 2, 3, 4, 5, 6], format!("radii {radii:?}"))?;
    ensure(density["probes"] == 500, "probe count is not 500")?;
    let cr: Vec<f64> = serde_json::from_value(density["covering_radius"].clone()).map_err(|e| e.to_string())?;
    let weakly = cr.windows(2).all(|w| w[1] <= w[0]);
    ensure(weakly, format!("covering radii not weakly decreasing: {cr:?}"))?;
    let strict_after_2 = (2..cr.len()).any(|i| cr[i] < cr[i - 1]);
    let finite = density["finite_group"].as_bool().unwrap_or(false);
    ensure(strict_after_2 || finite, format!("no strict decrease after radius 2 and not flagged finite: {cr:?}"))?;
    let checks = &report["result"]["dynamics"]["density_checks"];
    ensure(checks["weakly_decreasing"] == weakly, "report disagrees on weak monotonicity")?;
    ensure(checks["strictly_decreases_after_radius_2"] == strict_after_2, "report disagrees on strict decrease")?;
    let shown: Vec<String> = cr.iter().map(|x| format!("{x:.3}")).collect();
    Ok(format!("covering radii [{}], finite group {finite}", shown.join(", ")))
}

fn criterion_7(report: &Value) -> Outcome {
    let spectral = report["result"]["dynamics"]["spectral"].as_array().ok_or("no spectral section")?;
    let degrees: Vec<u64> = spectral.iter().filter_map(|s| s["degree"].as_u64()).collect();
    ensure(degrees == vec![1, 2, 3, 4], format!("degrees {degrees:?}"))?;
    let mut norms = Vec::new();
    for s in spectral {
        ensure(s["converged"] == true, format!("degree {} did not converge", s["degree"]))?;
        ensure(s["tolerance"].as_f64() == Some(1e-8), "power tolerance is not 1e-8")?;
        ensure(s["iterations"].as_u64().is_some_and(|i| i <= 500), "more than 500 iterations")?;
        let norm = s["estimate"].as_f64().unwrap_or(0.0);
        ensure(norm <= 1.0 + 1e-8, format!("norm {norm} in degree {}", s["degree"]))?;
        norms.push(format!("{norm:.4}"));
    }
    let circle = harmonic_space(2, 1, 100).map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    for alpha in [2f64.sqrt() - 1.0, (5f64.sqrt() - 1.0) / 2.0, std::f64::consts::PI - 3.0, 0.1234567] {
        let g = GeneratorImages::from_float(vec![plane_rotation(2, 0, 1, TAU * alpha)]);
        let est = averaging_operator_norm(&g, &circle, DEFAULT_POWER_TOL, DEFAULT_POWER_ITERS).map_err(|e| e.to_string())?;
        let err = (est.estimate.unwrap_or(f64::NAN) - (TAU * alpha).cos().abs()).abs();
        worst = worst.max(err);
    }
    ensure(worst <= 1e-8, format!("circle rotation error {worst:e}"))?;
    Ok(format!("norms [{}] all converged; circle error {worst:.1e}", norms.join(", ")))
}

fn criterion_8() -> Outcome {
    let corpus = bundled_corpus();
    let mut checked = 0;
    for entry in &corpus.entries {
        let pres = entry.presentation.to_presentation().map_err(|e| e.to_string())?;
        let small = pres.generator_count() <= 3 && pres.relators().len() <= 2 && pres.relators().iter().all(|r| r.len() <= 6);
        if !small {
            continue;
        }
        for named in &entry.representations {
            let rep = named.rep.to_rep(&pres).map_err(|e| e.to_string())?;
            let Some((gens, _)) = rep.exact_images() else {
                continue;
            };
            if rep.dim() > 3 {
                continue;
            }
            let rows: Vec<Vec<Vec<Rational>>> = gens.iter().map(to_rows).collect();
            let brute = brute_h1(&pres, &rows);
            let lib = h1_dimension(&pres, &rep).map_err(|e| e.to_string())?;
            ensure(
                (lib.z1_dim, lib.b1_dim) == (brute.z1, brute.b1),
                format!(
                    "{}/{}: library Z1={} B1={} vs brute Z1={} B1={}",
                    entry.name, named.name, lib.z1_dim, lib.b1_dim, brute.z1, brute.b1
                ),
            )?;
            checked += 1;
        }
    }
    ensure(checked > 0, "no corpus case checked")?;
    let known: [(&str, Presentation, usize); 4] = [
        ("Z", Presentation::free(&["a"]), 1),
        ("Z^2", Presentation::from_symbols(&["a", "b"], &[&["a", "b", "a^-1", "b^-1"]]).unwrap(), 2),
        ("Z/2", Presentation::from_symbols(&["a"], &[&["a", "a"]]).unwrap(), 0),
        ("F2", Presentation::free(&["a", "b"]), 2),
    ];
    for (name, pres, want) in &known {
        let lib = h1_dimension(pres, &MatrixRep::trivial(pres, 1)).map_err(|e| e.to_string())?.h1_dim;
        let ones = vec![vec![vec![q(1)]]; pres.generator_count()];
        let brute = brute_h1(pres, &ones);
        ensure(lib == *want && brute.z1 - brute.b1 == *want, format!("{name}: library {lib}, brute {}", brute.z1 - brute.b1))?;
    }
    Ok(format!("{checked} corpus cases agree; Z=1, Z^2=2, Z/2=0, F2=2"))
}

fn criterion_9() -> Outcome {
    let cfg = Config::default();
    let s = &cfg.suspension;
    let so3_chart = MCChart::new(3, ChartKind::Exponential, s.samples, s.chart_radius, cfg.seed)
        .map_err(|e| e.to_string())?
        .with_steps(s.steps.clone());
    let rep = mc_residual(&so3_chart).map_err(|e| e.to_string())?;
    let order = rep.order.ok_or("no order estimate")?;
    ensure((1.7..=2.3).contains(&order), format!("order {order}"))?;
    let so2 = MCChart::new(2, ChartKind::Exponential, s.samples, s.chart_radius, cfg.seed)
        .map_err(|e| e.to_string())?
        .with_steps(s.steps.clone());
    let flat = mc_residual(&so2).map_err(|e| e.to_string())?;
    let so2_max = flat.residuals.iter().cloned().fold(0.0, f64::max);
    ensure(so2_max <= 1e-13, format!("SO(2) residual {so2_max:e}"))?;
    let mut inv = 0.0f64;
    for g in haar_probes(3, 20, cfg.seed) {
        inv = inv.max(invariance_residual(&so3_chart, &g).map_err(|e| e.to_string())?);
    }
    ensure(inv <= 1e-10, format!("invariance residual {inv:e}"))?;
    Ok(format!("SO(3) order {order:.4}; SO(2) residual {so2_max:.1e}; invariance {inv:.1e} over 20 translations"))
}

fn criterion_10(first: &str) -> Outcome {
    let (second, _) = forge_report(4)?;
    ensure(first == second, "two runs with 4 workers differ")?;
    let (single, _) = forge_report(1)?;
    ensure(first == single, "1 worker and 4 workers differ")?;
    Ok(format!("3 forge runs byte-identical ({} bytes)", first.len()))
}

fn main() {
    let mut results: Vec<(usize, Outcome, Duration)> = Vec::new();
    let mut timed = |n: usize, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(&mut *f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d.clone()),
            Err(d) => ("FAIL", d.clone()),
        };
        println!("criterion {n:>2}: {tag} [{:.2}s] {detail}", elapsed.as_secs_f64());
        results.push((n, outcome, elapsed));
    };
    timed(1, &mut criterion_1);
    timed(2, &mut criterion_2);
    timed(3, &mut criterion_3);
    timed(4, &mut criterion_4);
    timed(5, &mut criterion_5);
    let forge_start = Instant::now();
    let forge = forge_report(4);
    let forge_time = forge_start.elapsed().as_secs_f64();
    let mut forge_6 = || {
        forge
            .clone()
            .and_then(|(_, v)| criterion_6(&v))
            .map(|d| format!("{d}; forge run {forge_time:.2}s"))
    };
    timed(6, &mut forge_6);
    let mut forge_7 = || forge.clone().and_then(|(_, v)| criterion_7(&v));
    timed(7, &mut forge_7);
    timed(8, &mut criterion_8);
    timed(9, &mut criterion_9);
    let mut forge_10 = || forge.clone().and_then(|(text, _)| criterion_10(&text));
    timed(10, &mut forge_10);
    let failed: BTreeSet<usize> = results.iter().filter(|r| r.1.is_err()).map(|r| r.0).collect();
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", results.len());
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
