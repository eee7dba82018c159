//! Interpolation machinery: pairwise-independent point selection along
//! matrix-power orbits, exact Vandermonde solving, and the end-to-end
//! unary-signature reduction validated against direct evaluation.

use crate::cyclo::Cyc12;
use crate::eval::holant_eval_grid;
use crate::grid::{SignatureGrid, SymSignature};
use crate::poly::CMat;
use crate::Error;

/// An iteration family: v_k = F M^k s (binary mode, 3x3 M with three
/// 2x3 finishers) or v_k = M^k s (unary mode, 2x2 M).
#[derive(Clone, Debug)]
pub struct IterationFamily {
    pub m: CMat,
    pub s: Vec<Cyc12>,
    pub finishers: Option<[CMat; 3]>,
    /// Maximum number of orbit vectors to examine.
    pub bound: usize,
}

impl IterationFamily {
    pub fn validate(&self) -> Result<(), Error> {
        if self.m.rows != self.m.cols {
            return Err(Error::NonSquare);
        }
        if self.m.det().is_zero() {
            return Err(Error::PreconditionViolation(
                "iteration matrix is singular".into(),
            ));
        }
        if self.s.len() != self.m.rows || self.s.iter().all(Cyc12::is_zero) {
            return Err(Error::PreconditionViolation(
                "starter vector must be nonzero and match the matrix size".into(),
            ));
        }
        if self.bound < 1 {
            return Err(Error::PreconditionViolation("bound must be >= 1".into()));
        }
        match (&self.finishers, self.m.rows) {
            (Some(fs), 3) => {
                for f in fs {
                    if (f.rows, f.cols) != (2, 3) {
                        return Err(Error::PreconditionViolation(
                            "finishers must be 2x3".into(),
                        ));
                    }
                }
                Ok(())
            }
            (None, 2) => Ok(()),
            (None, 3) => Err(Error::PreconditionViolation(
                "3x3 iteration requires three finishers".into(),
            )),
            _ => Err(Error::PreconditionViolation(
                "unsupported iteration family shape".into(),
            )),
        }
    }

    /// The pigeonhole bound (n+2)^3 + 1 for a target of n+1 points.
    pub fn default_bound(n: usize) -> usize {
        (n + 2) * (n + 2) * (n + 2) + 1
    }
}

/// A selection of pairwise projectively-independent points along the
/// orbit, ready for Vandermonde solving.
#[derive(Clone, Debug)]
pub struct InterpolationPlan {
    /// Which finisher produced the points (binary mode only).
    pub finisher_index: Option<usize>,
    /// Selected orbit indices k_0 < ... < k_n.
    pub indices: Vec<usize>,
    /// The 2-vectors v_k = [X_k, Y_k] at the selected indices.
    pub points: Vec<[Cyc12; 2]>,
    /// X_k / Y_k, pairwise distinct.
    pub ratios: Vec<Cyc12>,
}

fn projectively_equal(u: &[Cyc12; 2], v: &[Cyc12; 2]) -> bool {
    &u[0] * &v[1] == &u[1] * &v[0]
}

/// Walk the orbit, group vectors by projective class, and return n+1
/// representatives with nonzero second coordinate. In binary mode all
/// three finishers are tried and the best one wins; the walk stops as
/// soon as some finisher has collected n+2 classes (at most one class
/// can have a zero second coordinate).
pub fn select_independent(fam: &IterationFamily, n: usize) -> Result<InterpolationPlan, Error> {
    fam.validate()?;
    let finishers: Vec<Option<&CMat>> = match &fam.finishers {
        Some(fs) => fs.iter().map(Some).collect(),
        None => vec![None],
    };
    // Per finisher: list of (representative point, first index).
    let mut classes: Vec<Vec<([Cyc12; 2], usize)>> = vec![Vec::new(); finishers.len()];
    let mut w = fam.s.clone();
    let mut done = None;
    for k in 0..fam.bound {
        if k > 0 {
            w = fam.m.apply(&w);
        }
        for (fi, f) in finishers.iter().enumerate() {
            let v: [Cyc12; 2] = match f {
                Some(f) => {
                    let fv = f.apply(&w);
                    [fv[0].clone(), fv[1].clone()]
                }
                None => [w[0].clone(), w[1].clone()],
            };
            if v[0].is_zero() && v[1].is_zero() {
                continue;
            }
            if !classes[fi].iter().any(|(rep, _)| projectively_equal(rep, &v)) {
                classes[fi].push((v, k));
                if classes[fi].len() >= n + 2 {
                    done = Some(fi);
                }
            }
        }
        if done.is_some() {
            break;
        }
    }
    let best = done.unwrap_or_else(|| {
        (0..classes.len())
            .max_by_key(|&fi| classes[fi].len())
            .unwrap()
    });
    let usable: Vec<&([Cyc12; 2], usize)> = classes[best]
        .iter()
        .filter(|(v, _)| !v[1].is_zero())
        .collect();
    if usable.len() < n + 1 {
        return Err(Error::SelectionFailure(format!(
            "pigeonhole obstruction: best finisher reached {} projective classes \
             ({} with nonzero second coordinate) within bound {}, needed {}",
            classes[best].len(),
            usable.len(),
            fam.bound,
            n + 1
        )));
    }
    let chosen = &usable[..n + 1];
    let mut ratios = Vec::with_capacity(n + 1);
    for (v, _) in chosen {
        ratios.push((&v[0] / &v[1])?);
    }
    Ok(InterpolationPlan {
        finisher_index: fam.finishers.as_ref().map(|_| best),
        indices: chosen.iter().map(|(_, k)| *k).collect(),
        points: chosen.iter().map(|(v, _)| v.clone()).collect(),
        ratios,
    })
}

/// Solve values_k = sum_i c_i X_k^i Y_k^(n-i) for c_0..c_n, exactly.
pub fn vandermonde_solve(
    points: &[[Cyc12; 2]],
    values: &[Cyc12],
    n: usize,
) -> Result<Vec<Cyc12>, Error> {
    if points.len() != n + 1 || values.len() != n + 1 {
        return Err(Error::PreconditionViolation(format!(
            "need exactly {} points and values",
            n + 1
        )));
    }
    // Row k: [Y^n, X Y^(n-1), ..., X^n] augmented with the value.
    let mut rows: Vec<Vec<Cyc12>> = Vec::with_capacity(n + 1);
    for (pt, val) in points.iter().zip(values) {
        let mut row = Vec::with_capacity(n + 2);
        for i in 0..=n {
            row.push(&pt[0].pow(i as u32) * &pt[1].pow((n - i) as u32));
        }
        row.push(val.clone());
        rows.push(row);
    }
    // Gaussian elimination over the field.
    for col in 0..=n {
        let pivot = (col..=n)
            .find(|&r| !rows[r][col].is_zero())
            .ok_or(Error::SingularSystem)?;
        rows.swap(col, pivot);
        let inv = rows[col][col].inv()?;
        for c in col..=n + 1 {
            rows[col][c] = &rows[col][c] * &inv;
        }
        for r in 0..=n {
            if r != col && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..=n + 1 {
                    rows[r][c] = &rows[r][c] - &(&factor * &rows[col][c]);
                }
            }
        }
    }
    Ok(rows.into_iter().map(|r| r[n + 1].clone()).collect())
}

/// Run the full reduction on a grid with n SLOT generators: evaluate
/// the grid with every SLOT filled by v_k for each selected k, solve
/// for the coefficients, and read off the Holant at the target unary
/// signature. Must equal direct evaluation with the SLOTs set to the
/// target.
pub fn interpolate_unary_reduction(
    grid: &SignatureGrid,
    target: &[Cyc12; 2],
    fam: &IterationFamily,
) -> Result<Cyc12, Error> {
    grid.validate()?;
    let n = grid.slot_count();
    if n == 0 {
        return holant_eval_grid(grid);
    }
    let plan = select_independent(fam, n)?;
    let mut values = Vec::with_capacity(n + 1);
    for point in &plan.points {
        let filled = grid.with_slots_filled(&SymSignature::new(vec![
            point[0].clone(),
            point[1].clone(),
        ]));
        values.push(holant_eval_grid(&filled)?);
    }
    let coeffs = vandermonde_solve(&plan.points, &values, n)?;
    let mut total = Cyc12::zero();
    for (i, c) in coeffs.iter().enumerate() {
        total = &total
            + &(c * &(&target[0].pow(i as u32) * &target[1].pow((n - i) as u32)));
    }
    Ok(total)
}

/// Outcome of checking the unary-iteration hypotheses for (M, s).
#[derive(Clone, Debug)]
pub enum UnaryFamilyCheck {
    /// All three exact tests passed; the recorded values re-verify.
    Certificate {
        det: Cyc12,
        /// tr^2 conj(det) and conj(tr)^2 det; unequal sides certify
        /// eigenvalues of distinct norm.
        norm_lhs: Cyc12,
        norm_rhs: Cyc12,
        /// det[M s | s], nonzero iff s is not an eigenvector.
        eigen_det: Cyc12,
    },
    Inconclusive { reason: String },
}

pub fn unary_family_check(m: &CMat, s: &[Cyc12; 2]) -> UnaryFamilyCheck {
    assert_eq!((m.rows, m.cols), (2, 2));
    let det = m.det();
    let tr = m.trace();
    let norm_lhs = &tr.pow(2) * &det.conj();
    let norm_rhs = &tr.conj().pow(2) * &det;
    let ms = m.apply(s);
    let eigen_det = &(&ms[0] * &s[1]) - &(&ms[1] * &s[0]);
    let mut reasons = Vec::new();
    if det.is_zero() {
        reasons.push("matrix is singular (zero eigenvalue)");
    }
    if norm_lhs == norm_rhs {
        reasons.push("eigenvalue norms may coincide");
    }
    if eigen_det.is_zero() {
        reasons.push("starter is an eigenvector");
    }
    if !reasons.is_empty() {
        return UnaryFamilyCheck::Inconclusive {
            reason: reasons.join("; "),
        };
    }
    UnaryFamilyCheck::Certificate {
        det,
        norm_lhs,
        norm_rhs,
        eigen_det,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::{ab_equal_matrix, eval_ab, finisher_set, recursion_matrix};
    use crate::grid::{GenLabel, GridEdge};
    use crate::poly::Var;

    fn ints(v: &[i64]) -> Vec<Cyc12> {
        v.iter().map(|&n| Cyc12::from_int(n)).collect()
    }

    #[test]
    fn diagonal_selection() {
        let m = CMat::new(3, 3, ints(&[1, 0, 0, 0, 2, 0, 0, 0, 3]));
        let e = |r: &[i64]| CMat::new(2, 3, ints(r));
        let fam = IterationFamily {
            m,
            s: ints(&[1, 1, 1]),
            finishers: Some([
                e(&[1, 0, 0, 0, 1, 0]),
                e(&[0, 1, 0, 0, 0, 1]),
                e(&[1, 0, 0, 0, 0, 1]),
            ]),
            bound: IterationFamily::default_bound(5),
        };
        let plan = select_independent(&fam, 5).unwrap();
        assert_eq!(plan.indices.len(), 6);
        for i in 0..plan.ratios.len() {
            for j in i + 1..plan.ratios.len() {
                assert_ne!(plan.ratios[i], plan.ratios[j]);
            }
        }
    }

    #[test]
    fn eigenvector_starter_fails() {
        let fam = IterationFamily {
            m: CMat::new(2, 2, ints(&[1, 0, 0, 2])),
            s: ints(&[1, 0]),
            finishers: None,
            bound: 50,
        };
        assert!(matches!(
            select_independent(&fam, 2),
            Err(Error::SelectionFailure(_))
        ));
    }

    #[test]
    fn vandermonde_examples() {
        // Holant = c0 Y + c1 X through (1,0) -> 3 and (0,1) -> 5.
        let pts = [
            [Cyc12::one(), Cyc12::zero()],
            [Cyc12::zero(), Cyc12::one()],
        ];
        let c = vandermonde_solve(&pts, &ints(&[3, 5]), 1).unwrap();
        assert_eq!(c, ints(&[5, 3]));

        // (X+Y)^2 through (1,1), (2,1), (3,1).
        let pts = [
            [Cyc12::one(), Cyc12::one()],
            [Cyc12::from_int(2), Cyc12::one()],
            [Cyc12::from_int(3), Cyc12::one()],
        ];
        let c = vandermonde_solve(&pts, &ints(&[4, 9, 16]), 2).unwrap();
        assert_eq!(c, ints(&[1, 2, 1]));

        let pts = [
            [Cyc12::one(), Cyc12::one()],
            [Cyc12::from_int(2), Cyc12::from_int(2)],
        ];
        assert!(matches!(
            vandermonde_solve(&pts, &ints(&[1, 2]), 1),
            Err(Error::SingularSystem)
        ));
    }

    fn one_slot_grid() -> SignatureGrid {
        SignatureGrid {
            generators: vec![GenLabel::Slot],
            recognizers: vec![SymSignature::from_ints(&[3, 5])],
            edges: vec![GridEdge { gen: (0, 0), rec: (0, 0) }],
            dangling: vec![],
        }
    }

    #[test]
    fn linear_interpolation_demo() {
        let fam = IterationFamily {
            m: CMat::new(2, 2, ints(&[1, 0, 0, 2])),
            s: ints(&[1, 1]),
            finishers: None,
            bound: IterationFamily::default_bound(1),
        };
        let target = [Cyc12::from_int(7), Cyc12::from_int(11)];
        let got = interpolate_unary_reduction(&one_slot_grid(), &target, &fam).unwrap();
        assert_eq!(got, Cyc12::from_int(7 * 3 + 11 * 5));
        let direct = holant_eval_grid(
            &one_slot_grid().with_slots_filled(&SymSignature::from_ints(&[7, 11])),
        )
        .unwrap();
        assert_eq!(got, direct);
    }

    #[test]
    fn singular_family_rejected() {
        let fam = IterationFamily {
            m: CMat::new(2, 2, ints(&[1, 1, 1, 1])),
            s: ints(&[1, 1]),
            finishers: None,
            bound: 10,
        };
        assert!(matches!(
            select_independent(&fam, 1),
            Err(Error::PreconditionViolation(_))
        ));
    }

    #[test]
    fn binary_family_at_2_3() {
        let a = Cyc12::from_int(2);
        let b = Cyc12::from_int(3);
        let set = finisher_set(&a, &b).unwrap();
        let m4 = eval_ab(&recursion_matrix(4).unwrap(), &a, &b).unwrap();
        let fam = IterationFamily {
            m: m4,
            s: ints(&[2, 1, 3]),
            finishers: Some(set.matrices),
            bound: IterationFamily::default_bound(4),
        };
        let plan = select_independent(&fam, 4).unwrap();
        assert_eq!(plan.indices.len(), 5);

        // Two slots meeting one binary recognizer.
        let grid = SignatureGrid {
            generators: vec![GenLabel::Slot, GenLabel::Slot],
            recognizers: vec![SymSignature::from_ints(&[1, 2, 3])],
            edges: vec![
                GridEdge { gen: (0, 0), rec: (0, 0) },
                GridEdge { gen: (1, 0), rec: (0, 1) },
            ],
            dangling: vec![],
        };
        let target = [Cyc12::from_int(7), Cyc12::from_int(11)];
        let got = interpolate_unary_reduction(&grid, &target, &fam).unwrap();
        let direct = holant_eval_grid(
            &grid.with_slots_filled(&SymSignature::from_ints(&[7, 11])),
        )
        .unwrap();
        assert_eq!(got, direct);
    }

    #[test]
    fn unary_checks() {
        // a = 1 + i in the a = b special matrix.
        let a = &Cyc12::one() + &Cyc12::i();
        let m = ab_equal_matrix()
            .eval(&[(Var::A, a.clone()), (Var::B, a.clone())])
            .unwrap();
        let s = [a.clone(), Cyc12::one()];
        assert!(matches!(
            unary_family_check(&m, &s),
            UnaryFamilyCheck::Certificate { .. }
        ));

        match unary_family_check(&CMat::identity(2), &s) {
            UnaryFamilyCheck::Inconclusive { reason } => {
                assert!(reason.contains("norms"));
            }
            _ => panic!("identity must be inconclusive"),
        }

        let m = CMat::new(2, 2, ints(&[1, 0, 0, 2]));
        match unary_family_check(&m, &[Cyc12::one(), Cyc12::zero()]) {
            UnaryFamilyCheck::Inconclusive { reason } => {
                assert!(reason.contains("eigenvector"));
            }
            _ => panic!("real diagonal matrix must be inconclusive"),
        }
    }
}
