use foliation_core::exactnum::{int, Field, Matrix, Rational};
use foliation_core::groupcoh::{
    bundled_corpus, cocycle_value, fox_matrix, h1_dimension, CocycleBasis, FoxMatrix, Letter, MatrixRep, Presentation,
};
use proptest::prelude::*;

/// Every exact representation in the bundled corpus.
fn exact_cases() -> Vec<(String, Presentation, MatrixRep)> {
    let mut out = Vec::new();
    for entry in bundled_corpus().entries {
        let pres = entry.presentation.to_presentation().unwrap();
        for named in &entry.representations {
            let rep = named.rep.to_rep(&pres).unwrap();
            if rep.is_exact() {
                out.push((format!("{}/{}", entry.name, named.name), pres.clone(), rep));
            }
        }
    }
    out
}

/// `psi(w)` accumulated left to right with an explicit running product.
fn accumulate(w: &[Letter], gens: &[Matrix<Rational>], values: &[Vec<Rational>], dim: usize) -> Vec<Rational> {
    let mut prefix = Matrix::<Rational>::identity(dim);
    let mut acc = vec![int(0); dim];
    for l in w {
        let g = &gens[l.generator];
        if l.inverse {
            let gi = g.inverse().unwrap();
            prefix = prefix.matmul(&gi);
            let step = prefix.mul_vec(&values[l.generator]);
            acc = acc.iter().zip(&step).map(|(a, s)| a.clone() - s.clone()).collect();
        } else {
            let step = prefix.mul_vec(&values[l.generator]);
            acc = acc.iter().zip(&step).map(|(a, s)| a.clone() + s.clone()).collect();
            prefix = prefix.matmul(g);
        }
    }
    acc
}

fn fixed_dimension(gens: &[Matrix<Rational>], dim: usize) -> usize {
    let mut rows = Vec::new();
    for g in gens {
        let d = g.sub(&Matrix::identity(dim));
        rows.extend((0..dim).map(|i| d.row(i).to_vec()));
    }
    if rows.is_empty() {
        return dim;
    }
    dim - Matrix::from_rows(rows).rank()
}

#[test]
fn cocycle_bases_vanish_on_relators() {
    for (name, pres, rep) in exact_cases() {
        let report = h1_dimension(&pres, &rep).unwrap();
        let CocycleBasis::Exact(basis) = &report.cocycle_basis else {
            panic!("{name}: exact rep gave a float basis");
        };
        let (gens, invs) = rep.exact_images().unwrap();
        for psi in basis {
            for r in pres.relators() {
                let ours = accumulate(r, gens, psi, rep.dim());
                assert!(ours.iter().all(Field::is_zero), "{name}: relator {:?}", pres.word_symbols(r));
                assert_eq!(cocycle_value(r, gens, invs, psi), ours, "{name}");
            }
        }
    }
}

#[test]
fn dimension_bookkeeping_is_consistent() {
    for (name, pres, rep) in exact_cases() {
        let report = h1_dimension(&pres, &rep).unwrap();
        let (gens, _) = rep.exact_images().unwrap();
        let fixed = fixed_dimension(gens, rep.dim());
        assert_eq!(report.fixed_dim, fixed, "{name}");
        assert_eq!(report.b1_dim, rep.dim() - fixed, "{name}");
        assert_eq!(report.h1_dim, report.z1_dim - report.b1_dim, "{name}");
        assert_eq!(report.cocycle_basis.len(), report.z1_dim, "{name}");
    }
}

#[test]
fn finite_cyclic_groups_have_no_first_cohomology() {
    for (name, pres, rep) in exact_cases() {
        if name.starts_with('C') && !name.starts_with("C2xZ") {
            assert_eq!(h1_dimension(&pres, &rep).unwrap().h1_dim, 0, "{name}");
        }
    }
}

fn invertible(n: usize) -> impl Strategy<Value = Matrix<Rational>> {
    prop::collection::vec(-3i64..=3, n * n)
        .prop_map(move |v| Matrix::from_fn(n, n, |i, j| int(v[i * n + j])))
        .prop_filter("invertible", |m| m.rank() == m.rows())
}

fn cycle(n: usize) -> Matrix<Rational> {
    Matrix::from_fn(n, n, |i, j| if i == (j + 1) % n { int(1) } else { int(0) })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn coboundaries_solve_the_fox_system(v in prop::collection::vec(-5i64..=5, 3), pick in any::<prop::sample::Index>()) {
        let cases = exact_cases();
        let (name, pres, rep) = &cases[pick.index(cases.len())];
        let dim = rep.dim();
        let v: Vec<Rational> = v[..dim].iter().map(|&x| int(x)).collect();
        let (gens, _) = rep.exact_images().unwrap();
        let psi: Vec<Rational> = gens
            .iter()
            .flat_map(|g| g.mul_vec(&v).into_iter().zip(&v).map(|(a, b)| a - b.clone()).collect::<Vec<_>>())
            .collect();
        let FoxMatrix::Exact(f) = fox_matrix(pres, rep).unwrap() else { panic!("{name}") };
        prop_assert!(f.mul_vec(&psi).iter().all(Field::is_zero), "{}", name);
    }

    #[test]
    fn tietze_move_preserves_h1(m in invertible(2), p in -2i32..=2, q in -2i32..=2) {
        let power = |k: i32| if k >= 0 { m.pow(k as u32) } else { m.inverse().unwrap().pow((-k) as u32) };
        let (a, b) = (power(p), power(q));
        let z2 = Presentation::from_symbols(&["a", "b"], &[&["a", "b", "a^-1", "b^-1"]]).unwrap();
        let tietze = Presentation::from_symbols(
            &["a", "b", "c"],
            &[&["a", "b", "a^-1", "b^-1"], &["c", "b^-1", "a^-1"]],
        )
        .unwrap();
        let r1 = MatrixRep::exact(&z2, vec![a.clone(), b.clone()]).unwrap();
        let r2 = MatrixRep::exact(&tietze, vec![a.clone(), b.clone(), a.matmul(&b)]).unwrap();
        prop_assert_eq!(h1_dimension(&z2, &r1).unwrap().h1_dim, h1_dimension(&tietze, &r2).unwrap().h1_dim);
    }

    #[test]
    fn conjugated_cyclic_representations_have_no_h1(n in 2usize..6, p in invertible(5)) {
        let ppow: Vec<&str> = vec!["a"; n];
        let pres = Presentation::from_symbols(&["a"], &[&ppow]).unwrap();
        // n-cycle on the first n coordinates, identity on the rest
        let mut c = Matrix::<Rational>::identity(5);
        c.set_block(0, 0, &cycle(n));
        let g = p.matmul(&c).matmul(&p.inverse().unwrap());
        let rep = MatrixRep::exact(&pres, vec![g]).unwrap();
        prop_assert_eq!(h1_dimension(&pres, &rep).unwrap().h1_dim, 0);
    }
}
