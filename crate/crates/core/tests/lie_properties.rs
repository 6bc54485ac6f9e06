use foliation_core::exactnum::{int, Field, Matrix, Rational};
use foliation_core::liealg::builders::{abelian, affine_line, direct_sum, heisenberg, so, so3};
use foliation_core::liealg::{
    ce_cohomology, ce_differential, derived_subalgebra, is_compact_type, is_ideal, is_negative_definite,
    killing_form, quotient_by_ideal, simple_decomposition, Bracket, LieAlgebra, LieError, Subspace,
    DEFAULT_CE_BUDGET,
};
use proptest::prelude::*;

fn zoo() -> Vec<(&'static str, LieAlgebra)> {
    vec![
        ("so3", so3()),
        ("so4", so(4)),
        ("so5", so(5)),
        ("heisenberg", heisenberg()),
        ("abelian4", abelian(4)),
        ("affine", affine_line()),
        ("so3+heisenberg", direct_sum(&[so3(), heisenberg()])),
    ]
}

fn assert_d_squared_zero(name: &str, g: &LieAlgebra) {
    for k in 0..g.dim() {
        let d = ce_differential(g, k, DEFAULT_CE_BUDGET).unwrap();
        let next = ce_differential(g, k + 1, DEFAULT_CE_BUDGET).unwrap();
        assert!(d.composes_to_zero(&next), "{name}: d^2 != 0 at degree {k}");
    }
}

#[test]
fn differential_squares_to_zero_on_builtins() {
    for (name, g) in zoo() {
        assert_d_squared_zero(name, &g);
    }
}

#[test]
fn first_cohomology_is_abelianization() {
    for (name, g) in zoo() {
        let h1 = ce_cohomology(&g, 1, DEFAULT_CE_BUDGET).unwrap().dimension;
        assert_eq!(h1, g.dim() - derived_subalgebra(&g).dim(), "{name}");
    }
}

#[test]
fn killing_form_of_compact_algebras_is_negative_definite() {
    for n in 3..=5 {
        let g = so(n);
        assert!(is_negative_definite(&killing_form(&g)), "so({n})");
        assert!(is_compact_type(&g));
    }
    assert!(!is_compact_type(&heisenberg()));
    assert!(!is_compact_type(&affine_line()));
}

fn check_decomposition(g: &LieAlgebra, expected: &[usize]) {
    let d = simple_decomposition(g).unwrap();
    let mut dims = d.dims();
    dims.sort_unstable();
    assert_eq!(dims, expected);
    assert_eq!(dims.iter().sum::<usize>(), g.dim());
    let kappa = killing_form(g);
    for (a, ia) in d.ideals.iter().enumerate() {
        assert!(is_ideal(g, ia));
        for ib in &d.ideals[a + 1..] {
            for x in ia.basis() {
                for y in ib.basis() {
                    let kx = kappa.mul_vec(x);
                    let v: Rational = kx.iter().zip(y).map(|(p, q)| p.clone() * q.clone()).sum();
                    assert!(v.is_zero());
                }
            }
        }
    }
}

#[test]
fn decompositions_are_orthogonal_partitions() {
    check_decomposition(&so(4), &[3, 3]);
    check_decomposition(&so(5), &[10]);
    check_decomposition(&direct_sum(&[so3(), so3(), so3()]), &[3, 3, 3]);
    check_decomposition(&direct_sum(&[so3(), so(5)]), &[3, 10]);
}

#[test]
fn quotient_projection_is_a_homomorphism() {
    let g = direct_sum(&[so3(), heisenberg()]);
    let n = g.dim();
    let centre = Subspace::span(n, &[g.unit(5)]);
    let so3_part = Subspace::span(n, &[g.unit(0), g.unit(1), g.unit(2)]);
    for h in [centre, so3_part] {
        let q = quotient_by_ideal(&g, &h).unwrap();
        for i in 0..n {
            for j in 0..n {
                let lhs = q.projection.mul_vec(&g.bracket(&g.unit(i), &g.unit(j)));
                let pi = q.projection.mul_vec(&g.unit(i));
                let pj = q.projection.mul_vec(&g.unit(j));
                assert_eq!(lhs, q.algebra.bracket(&pi, &pj));
            }
        }
    }
    let not_ideal = Subspace::span(n, &[g.unit(3)]);
    assert!(matches!(quotient_by_ideal(&g, &not_ideal), Err(LieError::NotAnIdeal)));
}

fn invertible(n: usize) -> impl Strategy<Value = Matrix<Rational>> {
    prop::collection::vec(-3i64..=3, n * n)
        .prop_map(move |v| Matrix::from_fn(n, n, |i, j| int(v[i * n + j])))
        .prop_filter("invertible", |m| m.rank() == m.rows())
}

/// Dense Jacobi check written against the raw constant table.
fn oracle_is_lie(dim: usize, c: &[Rational]) -> bool {
    let at = |i: usize, j: usize, k: usize| &c[(i * dim + j) * dim + k];
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                if *at(i, j, k) != -at(j, i, k).clone() {
                    return false;
                }
            }
        }
    }
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                for m in 0..dim {
                    let mut s = Rational::from_integer(0.into());
                    for l in 0..dim {
                        s += at(i, j, l).clone() * at(l, k, m).clone()
                            + at(j, k, l).clone() * at(l, i, m).clone()
                            + at(k, i, l).clone() * at(l, j, m).clone();
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

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn change_of_basis_preserves_complex(p in invertible(6)) {
        let g = direct_sum(&[so3(), heisenberg()]).change_basis(&p).unwrap();
        assert_d_squared_zero("conjugated", &g);
        let h1 = ce_cohomology(&g, 1, DEFAULT_CE_BUDGET).unwrap().dimension;
        prop_assert_eq!(h1, 2);
        prop_assert_eq!(ce_cohomology(&g, 3, DEFAULT_CE_BUDGET).unwrap().dimension,
            ce_cohomology(&direct_sum(&[so3(), heisenberg()]), 3, DEFAULT_CE_BUDGET).unwrap().dimension);
    }

    #[test]
    fn validator_agrees_with_dense_oracle(entries in prop::collection::vec((0usize..4, 0usize..4, 0usize..4, -1i64..=1), 0..6)) {
        let dim = 4;
        let brackets: Vec<Bracket> = entries
            .iter()
            .filter(|(i, j, _, _)| i < j)
            .map(|&(i, j, k, c)| Bracket { i, j, k, coeff: int(c) })
            .collect();
        // later duplicates of the same (i, j, k) must agree with the first
        let mut table = vec![int(0); dim * dim * dim];
        let mut first = std::collections::HashMap::new();
        let mut consistent = true;
        for b in &brackets {
            match first.get(&(b.i, b.j, b.k)) {
                Some(c) => consistent &= *c == b.coeff,
                None => {
                    first.insert((b.i, b.j, b.k), b.coeff.clone());
                    table[(b.i * dim + b.j) * dim + b.k] = b.coeff.clone();
                    table[(b.j * dim + b.i) * dim + b.k] = -b.coeff.clone();
                }
            }
        }
        let expected = consistent && oracle_is_lie(dim, &table);
        let names = (0..dim).map(|i| format!("e{i}")).collect();
        prop_assert_eq!(LieAlgebra::from_brackets(dim, names, &brackets).is_ok(), expected);
    }
}
