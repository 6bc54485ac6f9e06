//! Algebra-level obstructions to infinitesimal rigidity of a Lie foliation
//! with transverse algebra `g`.

use serde::Serialize;

use crate::liealg::{
    ce_cohomology, derived_subalgebra, is_compact_type, is_ideal, is_perfect, is_semisimple, simple_decomposition,
    subalgebra, LieAlgebra, LieError, Subspace, DEFAULT_CE_BUDGET,
};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdealReduction {
    pub dim: usize,
    pub is_perfect: bool,
    pub h1_dim: usize,
    /// `H^1` of the ideal vanishes, so passing to the quotient foliation
    /// keeps infinitesimal rigidity.
    pub reduction_preserves_rigidity: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ObstructionReport {
    pub dim: usize,
    pub derived_dim: usize,
    /// `dim g - dim [g, g]`.
    pub h1_dim: usize,
    pub is_perfect: bool,
    /// Perfectness fails, so no rigid foliation has this transverse algebra.
    pub perfectness_obstruction: bool,
    pub is_semisimple: bool,
    pub is_compact_type: bool,
    /// Dimensions of the simple ideals; empty unless semisimple.
    pub simple_ideal_dims: Vec<usize>,
    /// `None` unless semisimple.
    pub so3_factor: Option<bool>,
    /// Semisimple with no simple ideal isomorphic to `so(3)`.
    pub no_so3_factor: bool,
    pub ideal: Option<IdealReduction>,
}

pub fn rigidity_pipeline(g: &LieAlgebra, ideal: Option<&Subspace>) -> Result<ObstructionReport, LieError> {
    let derived_dim = derived_subalgebra(g).dim();
    let perfect = is_perfect(g);
    let semisimple = is_semisimple(g);
    let (simple_ideal_dims, so3_factor) = if semisimple {
        let d = simple_decomposition(g)?;
        (d.dims(), Some(d.has_so3_factor()))
    } else {
        (Vec::new(), None)
    };
    let ideal = match ideal {
        None => None,
        Some(h) => {
            if h.ambient_dim() != g.dim() {
                return Err(LieError::DimensionMismatch {
                    expected: g.dim(),
                    found: h.ambient_dim(),
                });
            }
            if !is_ideal(g, h) {
                return Err(LieError::NotAnIdeal);
            }
            let sub = subalgebra(g, h)?;
            let h1 = ce_cohomology(&sub, 1, DEFAULT_CE_BUDGET)?.dimension;
            Some(IdealReduction {
                dim: h.dim(),
                is_perfect: is_perfect(&sub),
                h1_dim: h1,
                reduction_preserves_rigidity: h1 == 0,
            })
        }
    };
    Ok(ObstructionReport {
        dim: g.dim(),
        derived_dim,
        h1_dim: g.dim() - derived_dim,
        is_perfect: perfect,
        perfectness_obstruction: !perfect,
        is_semisimple: semisimple,
        is_compact_type: is_compact_type(g),
        simple_ideal_dims,
        so3_factor,
        no_so3_factor: so3_factor == Some(false),
        ideal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, Matrix, Rational};
    use crate::liealg::builders;

    #[test]
    fn so5_passes_every_check() {
        let r = rigidity_pipeline(&builders::so(5), None).unwrap();
        assert!(r.is_perfect && r.is_semisimple && r.is_compact_type && r.no_so3_factor);
        assert_eq!(r.simple_ideal_dims, vec![10]);
    }

    #[test]
    fn so4_has_so3_factors() {
        let r = rigidity_pipeline(&builders::so(4), None).unwrap();
        assert!(r.is_perfect);
        assert_eq!(r.so3_factor, Some(true));
        assert!(!r.no_so3_factor);
    }

    #[test]
    fn abelian_plane_is_obstructed() {
        let r = rigidity_pipeline(&builders::abelian(2), None).unwrap();
        assert!(r.perfectness_obstruction);
        assert_eq!(r.h1_dim, 2);
        assert_eq!(r.so3_factor, None);
    }

    #[test]
    fn ideal_reduction_on_a_product() {
        let g = builders::direct_sum(&[builders::so3(), builders::heisenberg()]);
        let id = Matrix::<Rational>::identity(6);
        let so3 = Subspace::span(6, &[id.column(0), id.column(1), id.column(2)]);
        let r = rigidity_pipeline(&g, Some(&so3)).unwrap();
        let red = r.ideal.unwrap();
        assert!(red.is_perfect && red.reduction_preserves_rigidity);
        assert!(!r.is_perfect);
        let not_ideal = Subspace::span(6, &[vec![int(1), int(0), int(0), int(1), int(0), int(0)]]);
        assert!(matches!(rigidity_pipeline(&g, Some(&not_ideal)), Err(LieError::NotAnIdeal)));
    }
}
