//! The gadget matrix catalog: recursive-construction matrices M4..M16,
//! the finisher F and starter s, the a=b special matrix, simulation
//! parameter formulas, the holographic diagonal transform, and a suite
//! of exact symbolic identities that the rest of the crate relies on.
//!
//! Gadget wirings are not modeled; only their transfer matrices matter
//! downstream, and those are stored here in closed form over {a, b}.

use crate::cyclo::Cyc12;
use crate::poly::{CMat, MPoly, PolyMatrix, Var};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GadgetKind {
    /// 3x3 recursion matrix for binary-signature iteration.
    BinaryRecursive,
    /// 2x2 recursion matrix for unary-signature iteration.
    UnaryRecursive,
    /// 2x3 matrix turning a binary signature into a unary one.
    Finisher,
    /// 3x1 starting signature column.
    Starter,
    /// 2x2 matrix for the a = b special case.
    Special,
}

#[derive(Clone, Debug)]
pub struct GadgetEntry {
    pub id: String,
    pub kind: GadgetKind,
    pub matrix: PolyMatrix,
}

fn p(s: &str) -> MPoly {
    MPoly::parse(s).expect("catalog polynomial")
}

fn pm(rows: usize, cols: usize, entries: &[&str]) -> PolyMatrix {
    PolyMatrix::from_strs(rows, cols, entries).expect("catalog matrix")
}

/// The 2x3 finisher matrix F.
pub fn f_matrix() -> PolyMatrix {
    pm(2, 3, &["a", "0", "1", "1", "0", "b"])
}

/// The starter column s = [a, 1, b].
pub fn s_vector() -> PolyMatrix {
    pm(3, 1, &["a", "1", "b"])
}

/// The 2x2 matrix governing the a = b case, stated in `a` alone.
pub fn ab_equal_matrix() -> PolyMatrix {
    pm(2, 2, &["a^3+a", "2*a", "2*a^2", "a^2+1"])
}

/// Recursion matrix M_n for n in 4..=16.
pub fn recursion_matrix(n: u32) -> Result<PolyMatrix, Error> {
    let m = match n {
        4 => pm(3, 3, &["a^3", "2*a", "b", "a^2", "a*b+1", "b^2", "a", "2*b", "b^3"]),
        5 => pm(
            3,
            3,
            &[
                "a^6+2*a^3+1", "2*a^4+2*a", "a^2",
                "a^5+a^2", "2*a^3+1", "a",
                "a^4", "2*a^2", "1",
            ],
        ),
        6 => pm(
            3,
            3,
            &[
                "a^3+1", "0", "a^2+b",
                "a^2+b", "0", "a+b^2",
                "a+b^2", "0", "b^3+1",
            ],
        ),
        7 => pm(
            3,
            3,
            &[
                "a^6+a^4*b+a^3+a^2*b^2", "2*a^4+4*a^2*b+2*a*b^3", "a^2+a*b^2+b^4+b",
                "a^5+a^3*b+a^2+a*b^2", "a^4*b+a^3+2*a^2*b^2+a*b^4+2*a*b+b^3", "a^2*b+a*b^3+b^5+b^2",
                "a^4+a^2*b+a+b^2", "2*a^3*b+4*a*b^2+2*b^4", "a^2*b^2+a*b^4+b^6+b^3",
            ],
        ),
        8 => pm(
            3,
            3,
            &[
                "a^6+2*a^3+1", "2*a^4+4*a^2*b+2*b^2", "a^2+2*a*b^2+b^4",
                "a^5+a^3*b+a^2+b", "2*a^3+2*a^2*b^2+2*a*b+2*b^3", "a*b^3+a+b^5+b^2",
                "a^4+2*a^2*b+b^2", "2*a^2+4*a*b^2+2*b^4", "b^6+2*b^3+1",
            ],
        ),
        9 => pm(
            3,
            3,
            &[
                "a^6+2*a^3+a^2*b^2", "2*a^4+2*a^2*b+2*a*b^3+2*a", "a^2+b^4+2*b",
                "a^5+2*a^2+a*b^2", "a^4*b+a^3+a^2*b^2+a*b^4+2*a*b+b^3+1", "a^2*b+b^5+2*b^2",
                "a^4+2*a+b^2", "2*a^3*b+2*a*b^2+2*b^4+2*b", "a^2*b^2+b^6+2*b^3",
            ],
        ),
        10 => pm(2, 2, &["a^3+1", "a+b^2", "a^2+b", "b^3+1"]),
        11 => pm(2, 2, &["a^3+a*b", "a+b^2", "a^2+b", "a*b+b^3"]),
        12 => pm(
            2,
            2,
            &[
                "a^6+2*a^4*b+a^3+3*a^2*b^2+a*b^4", "a^4+3*a^2*b+2*a*b^3+b^5+b^2",
                "a^5+2*a^3*b+a^2+3*a*b^2+b^4", "a^4*b+3*a^2*b^2+2*a*b^4+b^6+b^3",
            ],
        ),
        13 => pm(
            2,
            2,
            &[
                "a^6+3*a^3+3*a*b+b^3", "a^4+2*a^2*b+a*b^3+a+b^5+2*b^2",
                "a^5+a^3*b+2*a^2+2*a*b^2+b^4+b", "a^3+3*a*b+b^6+3*b^3",
            ],
        ),
        14 => pm(
            2,
            2,
            &[
                "a^6+3*a^3+a^2*b^2+a*b+b^3+1", "a^4+2*a^2*b+a*b^3+a+b^5+2*b^2",
                "a^5+a^3*b+2*a^2+2*a*b^2+b^4+b", "a^3+a^2*b^2+a*b+b^6+3*b^3+1",
            ],
        ),
        15 => pm(
            2,
            2,
            &[
                "a^6+a^4*b+2*a^3+a^2*b^2+2*a*b+b^3", "a^4+3*a^2*b+2*a*b^3+b^5+b^2",
                "a^5+2*a^3*b+a^2+3*a*b^2+b^4", "a^3+a^2*b^2+a*b^4+2*a*b+b^6+2*b^3",
            ],
        ),
        16 => pm(
            2,
            2,
            &[
                "a^6+a^4*b+2*a^3+a^2*b^2+2*a*b+b^3", "a^4+a^3*b^2+a^2*b+2*a*b^3+a+b^5+b^2",
                "a^5+2*a^3*b+a^2*b^3+a^2+a*b^2+b^4+b", "a^3+a^2*b^2+a*b^4+2*a*b+b^6+2*b^3",
            ],
        ),
        _ => return Err(Error::UnknownGadget(n.to_string())),
    };
    Ok(m)
}

/// Catalog lookup by id ("4".."16", "M4".."M16", "F", "s", "vc2x2").
pub fn builtin_matrix(id: &str) -> Result<GadgetEntry, Error> {
    let canon = id.trim();
    match canon {
        "F" => {
            return Ok(GadgetEntry {
                id: "F".into(),
                kind: GadgetKind::Finisher,
                matrix: f_matrix(),
            })
        }
        "s" => {
            return Ok(GadgetEntry {
                id: "s".into(),
                kind: GadgetKind::Starter,
                matrix: s_vector(),
            })
        }
        "vc2x2" => {
            return Ok(GadgetEntry {
                id: "vc2x2".into(),
                kind: GadgetKind::Special,
                matrix: ab_equal_matrix(),
            })
        }
        _ => {}
    }
    let digits = canon.strip_prefix('M').unwrap_or(canon);
    let n: u32 = digits
        .parse()
        .map_err(|_| Error::UnknownGadget(id.to_string()))?;
    let matrix = recursion_matrix(n)?;
    let kind = if n <= 9 {
        GadgetKind::BinaryRecursive
    } else {
        GadgetKind::UnaryRecursive
    };
    Ok(GadgetEntry {
        id: format!("M{n}"),
        kind,
        matrix,
    })
}

/// q_0 = 2, q_1 = Y, q_{k+1} = Y q_k - X^3 q_{k-1}; q_k(ab, a^3+b^3)
/// equals a^(3k) + b^(3k).
pub fn q_polys(up_to: usize) -> Vec<MPoly> {
    let y = MPoly::var(Var::Y);
    let x3 = MPoly::var(Var::X).pow(3);
    let mut q = vec![MPoly::int(2), y.clone()];
    for k in 2..=up_to {
        let next = &(&y * &q[k - 1]) - &(&x3 * &q[k - 2]);
        q.push(next);
    }
    q.truncate(up_to + 1);
    q
}

/// Substitute X -> ab, Y -> a^3 + b^3.
pub fn subst_ab(p_xy: &MPoly) -> MPoly {
    p_xy.subst(&[
        (Var::X, p("a*b")),
        (Var::Y, p("a^3+b^3")),
    ])
}

/// Rewrite a polynomial in {a, b} that is symmetric under a <-> b and
/// pairs exponents congruent mod 3 as a polynomial in X = ab,
/// Y = a^3 + b^3. Each extraction uses
/// a^i b^j + a^j b^i = X^min(i,j) q_{|i-j|/3}.
pub fn to_xy(poly: &MPoly) -> Result<MPoly, Error> {
    let swapped = poly.subst(&[(Var::A, MPoly::var(Var::B)), (Var::B, MPoly::var(Var::A))]);
    if swapped != *poly {
        return Err(Error::CaseMismatch(
            "polynomial is not symmetric under a <-> b".into(),
        ));
    }
    let max_gap = poly
        .terms()
        .map(|(e, _)| (e[0] as i32 - e[1] as i32).unsigned_abs() as usize)
        .max()
        .unwrap_or(0);
    let q = q_polys(max_gap / 3 + 1);
    let xv = MPoly::var(Var::X);
    let mut rem = poly.clone();
    let mut out = MPoly::zero();
    while let Some((exp, coef)) = rem.leading_term() {
        if exp[2] != 0 || exp[3] != 0 || exp[4] != 0 {
            return Err(Error::CaseMismatch(
                "polynomial has variables other than a, b".into(),
            ));
        }
        let (i, j) = (exp[0] as usize, exp[1] as usize);
        let c = coef.clone();
        let (lo, hi) = (i.min(j), i.max(j));
        if i == j {
            out = &out + &(&xv.pow(i as u32) * &MPoly::constant(c.clone()));
            let t = MPoly::monomial([i as u16, j as u16, 0, 0, 0], c);
            rem = &rem - &t;
        } else {
            if (hi - lo) % 3 != 0 {
                return Err(Error::Mod3ViolationAnomaly { i, j });
            }
            out = &out
                + &(&(&xv.pow(lo as u32) * &q[(hi - lo) / 3]) * &MPoly::constant(c.clone()));
            let t1 = MPoly::monomial([i as u16, j as u16, 0, 0, 0], c.clone());
            let t2 = MPoly::monomial([j as u16, i as u16, 0, 0, 0], c);
            rem = &(&rem - &t1) - &t2;
        }
    }
    Ok(out)
}

/// R = (Y+2)^2 - 4(X-1)^2(X+1), the modulus of the divisibility
/// identities used in the unary-recursion analysis.
pub fn r_poly() -> MPoly {
    p("(Y+2)^2-4*(X-1)^2*(X+1)")
}

/// The (B, C, D) coefficient lists of x^3 + Bx^2 + Cx + D for the
/// recursion matrices M4, M7, M8, M9, in X and Y.
pub fn charpoly_xy(n: u32) -> Result<(MPoly, MPoly, MPoly), Error> {
    let (b, c, d) = match n {
        4 => (
            "-(X+Y+1)",
            "(X^2+X+Y)*(X-1)",
            "-X*(X-1)^3",
        ),
        7 => (
            "2*X^3-4*X^2-2*X*Y-2*X-Y^2-2*Y",
            "(X-1)*(X^5-4*X^4-X^3*Y+6*X^3+7*X^2*Y+4*X^2+4*X*Y^2+5*X*Y+X+Y^3+2*Y^2+Y)",
            "-(X-1)^3*(2*X+Y)*(X^4-X^3+X^2*Y+3*X^2+2*X*Y+X+Y^2+Y)",
        ),
        8 => (
            "2*X^3-2*X^2-2*X-Y^2-4*Y-2",
            "(X-1)^2*(X^4-2*X^3+2*X^2+4*X*Y+6*X+2*Y^2+4*Y+1)",
            "-2*(X-1)^6*X*(X+1)",
        ),
        9 => (
            // The trace of M9 contains Y^2 - 2X^3; the 2X^3 term is
            // recomputed here from the matrix itself (cf. B7, B8).
            "2*X^3-3*X^2-X*Y-Y^2-2*X-3*Y-1",
            "(X-1)*(X^5-3*X^4-2*X^3*Y-X^3+4*X^2*Y+7*X^2+2*X*Y^2+6*X*Y+4*X+Y^3+4*Y^2+4*Y)",
            "-(X-1)^3*(X+Y+1)*(X^4-2*X^3+X^2+2*X*Y+4*X+Y^2+2*Y)",
        ),
        _ => return Err(Error::UnknownGadget(format!("charpoly M{n}"))),
    };
    Ok((p(b), p(c), p(d)))
}

/// Extra factor appearing in det[s, M_n s, M_n^2 s] beyond
/// (X-1)^k (b^3 - a^3).
pub fn h_factor(n: u32) -> Result<MPoly, Error> {
    let h = match n {
        4 => "1",
        7 => "(X^2+X+Y)*(X+Y+1)",
        8 => "X^2*Y+4*X^2+2*X*Y+Y^2+Y",
        9 => "(X+1)*(Y+2)",
        _ => return Err(Error::UnknownGadget(format!("h factor M{n}"))),
    };
    Ok(p(h))
}

/// det[s, M_n s, M_n^2 s] as a polynomial in a, b.
pub fn starter_det(n: u32) -> Result<MPoly, Error> {
    let m = recursion_matrix(n)?;
    let s = s_vector();
    let ms = m.matmul(&s);
    let mms = m.matmul(&ms);
    columns_3x3(&s, &ms, &mms).det()
}

fn columns_3x3(c0: &PolyMatrix, c1: &PolyMatrix, c2: &PolyMatrix) -> PolyMatrix {
    let mut entries = Vec::with_capacity(9);
    for r in 0..3 {
        entries.push(c0.at(r, 0).clone());
        entries.push(c1.at(r, 0).clone());
        entries.push(c2.at(r, 0).clone());
    }
    PolyMatrix::new(3, 3, entries)
}

fn cross_rows_poly(m: &PolyMatrix) -> [MPoly; 3] {
    assert_eq!((m.rows, m.cols), (2, 3));
    let u = [m.at(0, 0), m.at(0, 1), m.at(0, 2)];
    let v = [m.at(1, 0), m.at(1, 1), m.at(1, 2)];
    [
        &(u[1] * v[2]) - &(u[2] * v[1]),
        &(u[2] * v[0]) - &(u[0] * v[2]),
        &(u[0] * v[1]) - &(u[1] * v[0]),
    ]
}

fn cross_rows_cmat(m: &CMat) -> [Cyc12; 3] {
    assert_eq!((m.rows, m.cols), (2, 3));
    let u = [m.at(0, 0), m.at(0, 1), m.at(0, 2)];
    let v = [m.at(1, 0), m.at(1, 1), m.at(1, 2)];
    [
        &(u[1] * v[2]) - &(u[2] * v[1]),
        &(u[2] * v[0]) - &(u[0] * v[2]),
        &(u[0] * v[1]) - &(u[1] * v[0]),
    ]
}

/// One verified symbolic fact; `lhs`/`rhs` carry the canonical sides
/// for failure reports.
#[derive(Clone, Debug)]
pub struct IdentityRecord {
    pub name: &'static str,
    pub anchor: &'static str,
    pub pass: bool,
    pub lhs: String,
    pub rhs: String,
}

fn eq_record(name: &'static str, anchor: &'static str, lhs: &MPoly, rhs: &MPoly) -> IdentityRecord {
    IdentityRecord {
        name,
        anchor,
        pass: lhs == rhs,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    }
}

fn div_record(
    name: &'static str,
    anchor: &'static str,
    dividend: &MPoly,
    divisor: &MPoly,
) -> IdentityRecord {
    let pass = matches!(dividend.divide_exact(divisor), Ok(Some(_)));
    IdentityRecord {
        name,
        anchor,
        pass,
        lhs: dividend.to_string(),
        rhs: format!("0 mod {divisor}"),
    }
}

fn bool_record(name: &'static str, anchor: &'static str, pass: bool, detail: String) -> IdentityRecord {
    IdentityRecord {
        name,
        anchor,
        pass,
        lhs: detail,
        rhs: String::new(),
    }
}

fn mat_eq_record(
    name: &'static str,
    anchor: &'static str,
    lhs: &PolyMatrix,
    rhs: &PolyMatrix,
) -> IdentityRecord {
    let fmt = |m: &PolyMatrix| {
        let mut parts = Vec::new();
        for r in 0..m.rows {
            for c in 0..m.cols {
                parts.push(m.at(r, c).to_string());
            }
        }
        format!("[{}]", parts.join("; "))
    };
    IdentityRecord {
        name,
        anchor,
        pass: lhs == rhs,
        lhs: fmt(lhs),
        rhs: fmt(rhs),
    }
}

fn subst_x(poly: &MPoly, value: MPoly) -> MPoly {
    poly.subst(&[(Var::X, value)])
}

fn subst_y(poly: &MPoly, value: MPoly) -> MPoly {
    poly.subst(&[(Var::Y, value)])
}

/// Re-verify the whole symbolic identity catalog by exact computation.
pub fn verify_identity_suite() -> Vec<IdentityRecord> {
    let mut out = Vec::new();
    let m4 = recursion_matrix(4).unwrap();
    let m5 = recursion_matrix(5).unwrap();
    let m6 = recursion_matrix(6).unwrap();
    let f = f_matrix();
    let s = s_vector();
    let r = r_poly();

    // (i), (ii): determinants of the binary recursion seeds.
    out.push(eq_record(
        "det_M4",
        "binary recursion matrix M4",
        &m4.det().unwrap(),
        &p("a*b*(a*b-1)^3"),
    ));
    out.push(eq_record(
        "det_M5",
        "binary recursion matrix M5",
        &m5.det().unwrap(),
        &MPoly::one(),
    ));

    // (iii): characteristic polynomials of M4, M7, M8, M9 in X, Y.
    for n in [4u32, 7, 8, 9] {
        let m = recursion_matrix(n).unwrap();
        let coeffs = m.charpoly().unwrap();
        let (eb, ec, ed) = charpoly_xy(n).unwrap();
        let got: Vec<MPoly> = coeffs.iter().map(|c| to_xy(c).unwrap()).collect();
        let pass = got[0] == eb && got[1] == ec && got[2] == ed;
        out.push(IdentityRecord {
            name: match n {
                4 => "charpoly_M4",
                7 => "charpoly_M7",
                8 => "charpoly_M8",
                _ => "charpoly_M9",
            },
            anchor: "characteristic polynomial in X, Y",
            pass,
            lhs: format!("B={}; C={}; D={}", got[0], got[1], got[2]),
            rhs: format!("B={eb}; C={ec}; D={ed}"),
        });
    }

    // (iv): cross products of the rows of F, F M4, F M4^2, plus the
    // reduced 2x2 determinant.
    {
        let fm4 = f.matmul(&m4);
        let fm44 = fm4.matmul(&m4);
        let t = p("a*b-1");
        let c0 = cross_rows_poly(&f);
        let c1 = cross_rows_poly(&fm4);
        let c2 = cross_rows_poly(&fm44);
        let e0 = [p("0"), p("1-a*b"), p("0")];
        let t2 = t.pow(2);
        let e1 = [
            &t2 * &p("2*b^2"),
            &t2 * &p("-a*b*(a*b+1)"),
            &t2 * &p("2*a^2"),
        ];
        let t3 = t.pow(3);
        let e2 = [
            &t3 * &p("2*b*(a^2*b^3+a^2+a*b^2+b^4)"),
            &t3 * &p("-a*b*(a^3*b^3+2*a^3+2*a^2*b^2+a*b+2*b^3)"),
            &t3 * &p("2*a*(a^4+a^3*b^2+a^2*b+b^2)"),
        ];
        let pass = c0 == e0 && c1 == e1 && c2 == e2;
        out.push(IdentityRecord {
            name: "cross_products_generic",
            anchor: "row cross products of F, F M4, F M4^2",
            pass,
            lhs: format!("{:?}", [&c0, &c1, &c2].map(|v| v.clone().map(|q| q.to_string()))),
            rhs: format!("{:?}", [&e0, &e1, &e2].map(|v| v.clone().map(|q| q.to_string()))),
        });
        let reduced = PolyMatrix::new(
            2,
            2,
            vec![
                p("b"),
                p("a"),
                p("a^2*b^3+a^2+a*b^2+b^4"),
                p("a^4+a^3*b^2+a^2*b+b^2"),
            ],
        );
        out.push(eq_record(
            "cross_reduced_det",
            "reduced 2x2 determinant of the cross-product matrix",
            &reduced.det().unwrap(),
            &p("(a*b-1)*(a^3-b^3)"),
        ));
    }

    // (v): the b = 0 cross-product set for {F, F M4, F M5}.
    {
        let at_b0 = |m: &PolyMatrix| {
            let mut entries = Vec::new();
            for rr in 0..m.rows {
                for cc in 0..m.cols {
                    entries.push(m.at(rr, cc).subst(&[(Var::B, MPoly::zero())]));
                }
            }
            PolyMatrix::new(m.rows, m.cols, entries)
        };
        let c0 = cross_rows_poly(&at_b0(&f));
        let c1 = cross_rows_poly(&at_b0(&f.matmul(&m4)));
        let c2 = cross_rows_poly(&at_b0(&f.matmul(&m5)));
        let e0 = [p("0"), p("1"), p("0")];
        let e1 = [p("0"), p("0"), p("2*a^2")];
        let e2 = [p("-2*a"), p("2*a^3+1"), p("-2*a^2*(1+a)*(a^2-a+1)")];
        out.push(IdentityRecord {
            name: "cross_products_b0",
            anchor: "row cross products of F, F M4, F M5 at b = 0",
            pass: c0 == e0 && c1 == e1 && c2 == e2,
            lhs: format!("{:?}", [&c0, &c1, &c2].map(|v| v.clone().map(|q| q.to_string()))),
            rhs: format!("{:?}", [&e0, &e1, &e2].map(|v| v.clone().map(|q| q.to_string()))),
        });
    }

    let m10 = recursion_matrix(10).unwrap();
    let m11 = recursion_matrix(11).unwrap();
    let m12 = recursion_matrix(12).unwrap();
    let m13 = recursion_matrix(13).unwrap();
    let m14 = recursion_matrix(14).unwrap();
    let m15 = recursion_matrix(15).unwrap();
    let m16 = recursion_matrix(16).unwrap();

    // (vi): M11 = M10 + (X-1) I.
    out.push(mat_eq_record(
        "esp_10_11",
        "M11 - M10 against (X-1) I",
        &m11.sub(&m10),
        &PolyMatrix::identity(2).scale(&p("a*b-1")),
    ));

    // (vii): invariants of M10 and M11.
    {
        let d10 = to_xy(&m10.det().unwrap()).unwrap();
        let d11 = to_xy(&m11.det().unwrap()).unwrap();
        let t10 = to_xy(&m10.trace().unwrap()).unwrap();
        let disc = &t10.pow(2) - &(&MPoly::int(4) * &d10);
        let pass = d10 == p("(X-1)^2*(X+1)")
            && d11 == p("(X-1)*(X^2+X+Y)")
            && t10 == p("Y+2")
            && disc == r;
        out.push(IdentityRecord {
            name: "m10_m11_invariants",
            anchor: "det/trace of M10 and M11",
            pass,
            lhs: format!("det10={d10}; det11={d11}; tr10={t10}; disc={disc}"),
            rhs: format!(
                "det10={}; det11={}; tr10={}; disc={}",
                p("(X-1)^2*(X+1)"),
                p("(X-1)*(X^2+X+Y)"),
                p("Y+2"),
                r
            ),
        });
    }

    // (viii): M12 invariants and their reduction along Y = -X^2 - X.
    {
        let d12 = to_xy(&m12.det().unwrap()).unwrap();
        let t12 = to_xy(&m12.trace().unwrap()).unwrap();
        out.push(eq_record(
            "det_M12_closed",
            "det(M12) in X, Y",
            &d12,
            &p("X^6-6*X^5-X^4*Y+16*X^4+11*X^3*Y-10*X^3+5*X^2*Y^2-7*X^2*Y-X^2+X*Y^3-4*X*Y^2-3*X*Y-Y^3-Y^2"),
        ));
        out.push(eq_record(
            "tr_M12_closed",
            "tr(M12) in X, Y",
            &t12,
            &p("-2*X^3+6*X^2+3*X*Y+Y^2+Y"),
        ));
        let curve = p("-X^2-X");
        out.push(eq_record(
            "m12_reduction",
            "M12 invariants along Y = -X^2 - X",
            &subst_y(&d12, curve.clone()),
            &p("-X^2*(X-1)^5"),
        ));
        out.push(eq_record(
            "m12_trace_reduction",
            "tr(M12) along Y = -X^2 - X",
            &subst_y(&t12, curve),
            &p("X*(X-1)^3"),
        ));
    }

    // (ix): specializations at X = -1.
    {
        let d11 = to_xy(&m11.det().unwrap()).unwrap();
        let t11 = to_xy(&m11.trace().unwrap()).unwrap();
        let d13 = to_xy(&m13.det().unwrap()).unwrap();
        let minus_one = MPoly::int(-1);
        let pass = subst_x(&d11, minus_one.clone()) == p("-2*Y")
            && subst_x(&t11, minus_one.clone()) == p("Y-2")
            && subst_x(&d13, minus_one.clone()) == p("-16*Y");
        out.push(bool_record(
            "x_minus_one_specials",
            "det/trace specializations at X = -1",
            pass,
            format!(
                "det11|={}; tr11|={}; det13|={}",
                subst_x(&d11, minus_one.clone()),
                subst_x(&t11, minus_one.clone()),
                subst_x(&d13, minus_one)
            ),
        ));
    }

    // (x): det(M13) and the shift M14 = M13 + (X-1)^2 I.
    out.push(eq_record(
        "det_M13",
        "det(M13) in X, Y",
        &to_xy(&m13.det().unwrap()).unwrap(),
        &p("(X-1)^3*(X^3+2*X^2+X+2*Y)"),
    ));
    out.push(mat_eq_record(
        "esp_13_14",
        "M14 - M13 against (X-1)^2 I",
        &m14.sub(&m13),
        &PolyMatrix::identity(2).scale(&p("(a*b-1)^2")),
    ));

    // (xi): divisibility by R.
    {
        let d14 = to_xy(&m14.det().unwrap()).unwrap();
        out.push(div_record(
            "det_M14_mod_R",
            "det(M14) - (X-1)^3(X^3+4X^2+2Y-1) modulo R",
            &(&d14 - &p("(X-1)^3*(X^3+4*X^2+2*Y-1)")),
            &r,
        ));
        let t13 = to_xy(&m13.trace().unwrap()).unwrap();
        out.push(div_record(
            "tr_M13_mod_R",
            "tr(M13) - 2X(X-1)^2 modulo R",
            &(&t13 - &p("2*X*(X-1)^2")),
            &r,
        ));
    }

    // (xii): M15 and M16 share a trace; their determinants.
    out.push(eq_record(
        "trace_15_16",
        "tr(M15) against tr(M16)",
        &m15.trace().unwrap(),
        &m16.trace().unwrap(),
    ));
    out.push(eq_record(
        "det_M16",
        "det(M16) in X, Y",
        &to_xy(&m16.det().unwrap()).unwrap(),
        &p("(X-1)^3*(X+1)*(X^2+X+Y)"),
    ));
    out.push(div_record(
        "det_M15_mod_R",
        "det(M15) - (X-1)^3(X+4)(X^2+X+Y) modulo R",
        &(&to_xy(&m15.det().unwrap()).unwrap() - &p("(X-1)^3*(X+4)*(X^2+X+Y)")),
        &r,
    ));

    // (xiii): starter determinants det[s, M s, M^2 s].
    for (n, expect_xy, power) in [
        (4u32, "1", 4u32),
        (7, "(X^2+X+Y)*(X+Y+1)", 5),
        (8, "X^2*Y+4*X^2+2*X*Y+Y^2+Y", 5),
        (9, "(X+1)*(Y+2)", 6),
    ] {
        let got = starter_det(n).unwrap();
        let expected =
            &(&subst_ab(&p(expect_xy)) * &p("a*b-1").pow(power)) * &p("b^3-a^3");
        out.push(IdentityRecord {
            name: match n {
                4 => "starter_det_M4",
                7 => "starter_det_M7",
                8 => "starter_det_M8",
                _ => "starter_det_M9",
            },
            anchor: "det[s, M s, M^2 s]",
            pass: got == expected,
            lhs: got.to_string(),
            rhs: expected.to_string(),
        });
    }

    // (xiv): the a = b matrix.
    {
        let m = ab_equal_matrix();
        let applied = m.matmul(&pm(2, 1, &["a", "1"]));
        let pass = m.det().unwrap() == p("a*(a-1)^2*(a+1)^2")
            && m.trace().unwrap() == p("(a+1)*(a^2+1)")
            && *applied.at(0, 0) == p("(a+1)*a*(a^2-a+2)")
            && *applied.at(1, 0) == p("(a+1)*(2*a^2-a+1)");
        out.push(bool_record(
            "ab_equal_matrix",
            "a = b special matrix invariants",
            pass,
            format!(
                "det={}; tr={}; Mv=[{}; {}]",
                m.det().unwrap(),
                m.trace().unwrap(),
                applied.at(0, 0),
                applied.at(1, 0)
            ),
        ));
    }

    // (xv): the three starter block determinants are nonzero polynomials.
    {
        let fs = f.matmul(&s);
        let fm4s = f.matmul(&m4).matmul(&s);
        let fm6s = f.matmul(&m6).matmul(&s);
        let det2 = |u: &PolyMatrix, v: &PolyMatrix| {
            &(u.at(0, 0) * v.at(1, 0)) - &(u.at(1, 0) * v.at(0, 0))
        };
        let d1 = det2(&fm4s, &fs);
        let d2 = det2(&fm6s, &fs);
        let d3 = det2(&fm4s, &fm6s);
        out.push(bool_record(
            "starter_blocks_nonzero",
            "pairwise determinants of Fs, F M4 s, F M6 s",
            !d1.is_zero() && !d2.is_zero() && !d3.is_zero(),
            format!("d(FM4s,Fs)={d1}; d(FM6s,Fs)={d2}; d(FM4s,FM6s)={d3}"),
        ));
    }

    out
}

/// Evaluate a catalog matrix at a concrete point.
pub fn eval_ab(m: &PolyMatrix, a: &Cyc12, b: &Cyc12) -> Result<CMat, Error> {
    m.eval(&[(Var::A, a.clone()), (Var::B, b.clone())])
}

fn check_region(a: &Cyc12, b: &Cyc12) -> Result<(), Error> {
    if (a * b).is_one() {
        return Err(Error::InvalidRegion("ab = 1".into()));
    }
    if a.pow(3) == b.pow(3) {
        return Err(Error::InvalidRegion("a^3 = b^3".into()));
    }
    Ok(())
}

/// Three finisher matrices with an exact independence certificate.
#[derive(Clone, Debug)]
pub struct FinisherSet {
    /// "generic" (F, F M4, F M4^2) or "b=0" (F, F M4, F M5).
    pub branch: &'static str,
    /// True when (a, b) were swapped to put the zero in the b slot.
    pub swapped: bool,
    pub matrices: [CMat; 3],
    pub cross_products: [[Cyc12; 3]; 3],
    /// 3x3 determinant of the cross-product rows; nonzero certifies
    /// pairwise trivial row-space intersection.
    pub independence_det: Cyc12,
    /// (ab-1)(a^3-b^3), the reduced determinant.
    pub reduced_det: Cyc12,
}

pub fn finisher_set(a: &Cyc12, b: &Cyc12) -> Result<FinisherSet, Error> {
    check_region(a, b)?;
    let ab = a * b;
    let (aa, bb, swapped) = if ab.is_zero() && a.is_zero() {
        (b.clone(), a.clone(), true)
    } else {
        (a.clone(), b.clone(), false)
    };
    let f = eval_ab(&f_matrix(), &aa, &bb)?;
    let m4 = eval_ab(&recursion_matrix(4)?, &aa, &bb)?;
    let (branch, mats) = if ab.is_zero() {
        let m5 = eval_ab(&recursion_matrix(5)?, &aa, &bb)?;
        ("b=0", [f.clone(), f.matmul(&m4), f.matmul(&m5)])
    } else {
        let fm4 = f.matmul(&m4);
        let fm44 = fm4.matmul(&m4);
        ("generic", [f, fm4, fm44])
    };
    let cross_products = [
        cross_rows_cmat(&mats[0]),
        cross_rows_cmat(&mats[1]),
        cross_rows_cmat(&mats[2]),
    ];
    let independence_det = CMat::new(
        3,
        3,
        cross_products.iter().flatten().cloned().collect(),
    )
    .det();
    if independence_det.is_zero() {
        return Err(Error::PreconditionViolation(
            "finisher cross products are linearly dependent".into(),
        ));
    }
    let reduced_det = &(&ab - &Cyc12::one()) * &(&a.pow(3) - &b.pow(3));
    Ok(FinisherSet {
        branch,
        swapped,
        matrices: mats,
        cross_products,
        independence_det,
        reduced_det,
    })
}

/// Three pairwise independent unary starters with determinant evidence.
#[derive(Clone, Debug)]
pub struct StarterSet {
    /// F s, F M4 s, F M6 s as 2-vectors.
    pub vectors: [[Cyc12; 2]; 3],
    /// dets of pairs (0,1), (0,2), (1,2); all nonzero.
    pub pairwise_dets: [Cyc12; 3],
}

pub fn starter_set(a: &Cyc12, b: &Cyc12) -> Result<StarterSet, Error> {
    check_region(a, b)?;
    let f = eval_ab(&f_matrix(), a, b)?;
    let s = eval_ab(&s_vector(), a, b)?;
    let m4 = eval_ab(&recursion_matrix(4)?, a, b)?;
    let m6 = eval_ab(&recursion_matrix(6)?, a, b)?;
    let col = |m: &CMat| [m.at(0, 0).clone(), m.at(1, 0).clone()];
    let vectors = [
        col(&f.matmul(&s)),
        col(&f.matmul(&m4).matmul(&s)),
        col(&f.matmul(&m6).matmul(&s)),
    ];
    let det2 = |u: &[Cyc12; 2], v: &[Cyc12; 2]| &(&u[0] * &v[1]) - &(&u[1] * &v[0]);
    let pairwise_dets = [
        det2(&vectors[0], &vectors[1]),
        det2(&vectors[0], &vectors[2]),
        det2(&vectors[1], &vectors[2]),
    ];
    for (k, d) in pairwise_dets.iter().enumerate() {
        if d.is_zero() {
            return Err(Error::PreconditionViolation(format!(
                "starter pair {k} is linearly dependent at this point"
            )));
        }
    }
    Ok(StarterSet {
        vectors,
        pairwise_dets,
    })
}

/// Unary simulation parameters for the vertex-cover-style reduction.
#[derive(Clone, Debug)]
pub struct VcParams {
    /// 1: ab not in {0,-1}; 2: ab = 0; 3: ab = -1.
    pub case_tag: u8,
    /// True when (a, b) were swapped to make a = 0 in case 2.
    pub swapped: bool,
    pub theta: [Cyc12; 2],
    pub gamma: Option<[Cyc12; 2]>,
    pub rho: Option<[Cyc12; 2]>,
    pub claimed_output: [Cyc12; 3],
}

pub fn vc_simulation_params(a: &Cyc12, b: &Cyc12) -> Result<VcParams, Error> {
    let ab = a * b;
    if ab.is_one() {
        return Err(Error::InvalidRegion("ab = 1".into()));
    }
    if a.is_zero() && b.is_zero() {
        return Err(Error::InvalidRegion("(a, b) = (0, 0)".into()));
    }
    let one = Cyc12::one();
    if ab.is_zero() {
        // Normalize to a = 0, b != 0.
        let (bb, swapped) = if a.is_zero() {
            (b.clone(), false)
        } else {
            (a.clone(), true)
        };
        let binv = bb.inv()?;
        return Ok(VcParams {
            case_tag: 2,
            swapped,
            theta: [bb.clone(), binv.clone()],
            gamma: None,
            rho: None,
            claimed_output: [binv, one, &Cyc12::from_int(2) * &bb],
        });
    }
    if (&ab + &one).is_zero() {
        // ab = -1, so a is invertible.
        let ainv = a.inv()?;
        return Ok(VcParams {
            case_tag: 3,
            swapped: false,
            theta: [
                &ainv * &Cyc12::from_rat(crate::cyclo::rat(1, 6)),
                &(-a) * &Cyc12::from_rat(crate::cyclo::rat(1, 24)),
            ],
            gamma: Some([&(-&Cyc12::from_int(3)) * &ainv, a.clone()]),
            rho: None,
            claimed_output: [
                Cyc12::zero(),
                one,
                &Cyc12::from_rat(crate::cyclo::rat(5, 2)) * &ainv,
            ],
        });
    }
    // Case 1. Denominators 1-ab, a^2, b(1+ab), ab-1 are all nonzero here.
    let one_minus = (&one - &ab).inv()?;
    let ab_plus = &ab + &one;
    let theta = [
        &ab_plus * &one_minus,
        &(&(-&a.pow(2)) * &ab_plus) * &one_minus,
    ];
    let gamma = [
        (-&a.pow(2).inv()?),
        (b * &ab_plus).inv()?,
    ];
    let minus_one_minus = (&ab - &one).inv()?;
    let rho = [&(-b) * &minus_one_minus, a * &minus_one_minus];
    Ok(VcParams {
        case_tag: 1,
        swapped: false,
        theta,
        gamma: Some(gamma),
        rho: Some(rho),
        claimed_output: [Cyc12::zero(), one.clone(), one],
    })
}

/// Diagonal holographic transform: (a, b) -> (w^2 a, w b) for a cube
/// root of unity w.
pub fn holographic_diag_transform(
    a: &Cyc12,
    b: &Cyc12,
    omega: &Cyc12,
) -> Result<(Cyc12, Cyc12), Error> {
    if !omega.pow(3).is_one() {
        return Err(Error::NotCubeRoot);
    }
    Ok((&omega.pow(2) * a, omega * b))
}
