//! The classifier for #[a,1,b] | [1,0,0,1] on 3-regular graphs, exact
//! distinct-norm certificates, the hardness-witness generator, and the
//! real-coordinate disjunction scan.

use serde_json::{json, Value};

use crate::cyclo::{Cyc12, Rat};
use crate::gadgets::{
    charpoly_xy, eval_ab, finisher_set, h_factor, holographic_diag_transform, recursion_matrix,
    starter_set, vc_simulation_params, FinisherSet, StarterSet, VcParams,
};
use crate::poly::{CMat, MPoly, Var};
use crate::Error;

/// The point (a, b) with its derived coordinates X = ab, Y = a^3 + b^3,
/// Z = (Y/2)^2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coordinates {
    pub a: Cyc12,
    pub b: Cyc12,
    pub x: Cyc12,
    pub y: Cyc12,
    pub z: Cyc12,
}

impl Coordinates {
    pub fn new(a: &Cyc12, b: &Cyc12) -> Self {
        let x = a * b;
        let y = &a.pow(3) + &b.pow(3);
        let z = &y.pow(2) * &Cyc12::from_rat(crate::cyclo::rat(1, 4));
        Coordinates {
            a: a.clone(),
            b: b.clone(),
            x,
            y,
            z,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "a": self.a.to_string(),
            "b": self.b.to_string(),
            "X": self.x.to_string(),
            "Y": self.y.to_string(),
            "Z": self.z.to_string(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// case 1: X = 1; case 2: X = Y = 0; case 3: X = -1, Y in {0, 2i, -2i}.
    Tractable { case: u8, citation: &'static str },
    /// On the curve 4X^3 = Y^2: planar instances are tractable, the
    /// general problem is #P-hard.
    PlanarTractableGeneralHard,
    Hard,
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub verdict: Verdict,
    pub planar_requested: bool,
    pub coordinates: Coordinates,
}

fn on_curve(x: &Cyc12, y: &Cyc12) -> bool {
    &Cyc12::from_int(4) * &x.pow(3) == y.pow(2)
}

/// Classify a parameter point; with `planar` set, curve points are
/// reported as planar-tractable.
pub fn classify(a: &Cyc12, b: &Cyc12, planar: bool) -> Classification {
    let c = Coordinates::new(a, b);
    let two_i = &Cyc12::from_int(2) * &Cyc12::i();
    let verdict = if c.x.is_one() {
        Verdict::Tractable {
            case: 1,
            citation: "X = 1: the edge signature is degenerate",
        }
    } else if c.x.is_zero() && c.y.is_zero() {
        Verdict::Tractable {
            case: 2,
            citation: "X = Y = 0: counts proper 2-colorings",
        }
    } else if (&c.x + &Cyc12::one()).is_zero()
        && (c.y.is_zero() || c.y == two_i || c.y == -&two_i)
    {
        Verdict::Tractable {
            case: 3,
            citation: "X = -1, Y in {0, 2i, -2i}: reducible to a known polynomial-time family",
        }
    } else if planar && on_curve(&c.x, &c.y) {
        Verdict::PlanarTractableGeneralHard
    } else {
        Verdict::Hard
    };
    Classification {
        verdict,
        planar_requested: planar,
        coordinates: c,
    }
}

impl Classification {
    pub fn to_json(&self) -> Value {
        let verdict = match &self.verdict {
            Verdict::Tractable { case, citation } => json!({
                "kind": "tractable",
                "case": case,
                "citation": citation,
            }),
            Verdict::PlanarTractableGeneralHard => json!({
                "kind": "planar-tractable-general-hard",
            }),
            Verdict::Hard => json!({"kind": "hard"}),
        };
        json!({
            "point": self.coordinates.to_json(),
            "planar": self.planar_requested,
            "verdict": verdict,
        })
    }
}

/// True iff the (X, Z) phrasing and the (X, Y) phrasing of the
/// classification agree at (a, b), for both planarity settings.
pub fn coordinates_equivalence_check(a: &Cyc12, b: &Cyc12) -> bool {
    let c = Coordinates::new(a, b);
    let minus_one = -&Cyc12::one();
    // (X, Z) phrasing: tractable iff X = 1, or X = Z = 0, or
    // (X = -1 and Z in {0, -1}); curve iff X^3 = Z.
    let xz_tractable = c.x.is_one()
        || (c.x.is_zero() && c.z.is_zero())
        || (c.x == minus_one && (c.z.is_zero() || c.z == minus_one));
    let xz_curve = c.x.pow(3) == c.z;
    for planar in [false, true] {
        let got = classify(a, b, planar).verdict;
        let expected = if xz_tractable {
            match got {
                Verdict::Tractable { .. } => got.clone(),
                _ => return false,
            }
        } else if planar && xz_curve {
            Verdict::PlanarTractableGeneralHard
        } else {
            Verdict::Hard
        };
        if got != expected {
            return false;
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertKind {
    Distinct2x2,
    Distinct3x3,
    EspDisjunctive,
    Inconclusive,
}

/// An exact eigenvalue-norm certificate; `lhs != rhs` (for the distinct
/// kinds) re-verifies by evaluation.
#[derive(Clone, Debug)]
pub struct NormCertificate {
    pub kind: CertKind,
    pub lhs: Cyc12,
    pub rhs: Cyc12,
    pub gadgets: Vec<String>,
    pub note: String,
}

impl NormCertificate {
    pub fn to_json(&self) -> Value {
        json!({
            "kind": match self.kind {
                CertKind::Distinct2x2 => "distinct-2x2",
                CertKind::Distinct3x3 => "distinct-3x3",
                CertKind::EspDisjunctive => "esp-disjunctive",
                CertKind::Inconclusive => "inconclusive",
            },
            "lhs": self.lhs.to_string(),
            "rhs": self.rhs.to_string(),
            "gadgets": self.gadgets,
            "note": self.note,
        })
    }
}

/// Distinct-norm test for a 2x2 matrix given by trace and determinant:
/// certifies when det != 0 and tr^2 conj(det) != conj(tr)^2 det.
pub fn distinct_norm_2x2(tr: &Cyc12, det: &Cyc12) -> NormCertificate {
    let lhs = &tr.pow(2) * &det.conj();
    let rhs = &tr.conj().pow(2) * det;
    if det.is_zero() {
        return NormCertificate {
            kind: CertKind::Inconclusive,
            lhs,
            rhs,
            gadgets: vec![],
            note: "zero eigenvalue (det = 0)".into(),
        };
    }
    if lhs != rhs {
        NormCertificate {
            kind: CertKind::Distinct2x2,
            lhs,
            rhs,
            gadgets: vec![],
            note: "nonzero eigenvalues of distinct norm".into(),
        }
    } else {
        NormCertificate {
            kind: CertKind::Inconclusive,
            lhs,
            rhs,
            gadgets: vec![],
            note: "norm test sides agree".into(),
        }
    }
}

/// Distinct-norm test for a 3x3 matrix with characteristic polynomial
/// x^3 + Bx^2 + Cx + D: certifies when D != 0 and
/// C C conj(C) != conj(B) B conj(B) D. For real inputs this is
/// D (B^3 D - C^3) != 0.
pub fn distinct_norm_3x3(b: &Cyc12, c: &Cyc12, d: &Cyc12) -> NormCertificate {
    let lhs = &(c * c) * &c.conj();
    let rhs = &(&(&b.conj() * b) * &b.conj()) * d;
    if d.is_zero() {
        return NormCertificate {
            kind: CertKind::Inconclusive,
            lhs,
            rhs,
            gadgets: vec![],
            note: "zero eigenvalue (D = 0)".into(),
        };
    }
    if lhs != rhs {
        NormCertificate {
            kind: CertKind::Distinct3x3,
            lhs,
            rhs,
            gadgets: vec![],
            note: "some two nonzero eigenvalues have distinct norms".into(),
        }
    } else {
        NormCertificate {
            kind: CertKind::Inconclusive,
            lhs,
            rhs,
            gadgets: vec![],
            note: "norm test sides agree".into(),
        }
    }
}

/// Eigenvalue-shift disjunction: when tr(M)/delta or det(M)/delta^2 is
/// moved by conjugation, at least one of M, M + delta I has nonzero
/// eigenvalues of distinct norm (which one is not asserted).
pub fn esp_disjunctive(m: &CMat, delta: &Cyc12) -> Result<NormCertificate, Error> {
    assert_eq!((m.rows, m.cols), (2, 2));
    if delta.is_zero() {
        return Err(Error::PreconditionViolation("delta = 0".into()));
    }
    let det = m.det();
    if det.is_zero() {
        return Err(Error::PreconditionViolation("det(M) = 0".into()));
    }
    let shifted = CMat::new(
        2,
        2,
        vec![
            m.at(0, 0) + delta,
            m.at(0, 1).clone(),
            m.at(1, 0).clone(),
            m.at(1, 1) + delta,
        ],
    );
    if shifted.det().is_zero() {
        return Err(Error::PreconditionViolation("det(M + delta I) = 0".into()));
    }
    let tr = m.trace();
    let disc = &tr.pow(2) - &(&Cyc12::from_int(4) * &det);
    if disc.is_zero() {
        return Err(Error::PreconditionViolation(
            "tr(M)^2 - 4 det(M) = 0".into(),
        ));
    }
    let t1 = (&tr / delta)?;
    let t2 = (&det / &delta.pow(2))?;
    let moved = t1.conj() != t1 || t2.conj() != t2;
    Ok(NormCertificate {
        kind: if moved {
            CertKind::EspDisjunctive
        } else {
            CertKind::Inconclusive
        },
        lhs: t1,
        rhs: t2,
        gadgets: vec![],
        note: if moved {
            "a shift ratio is moved by conjugation".into()
        } else {
            "both shift ratios are conjugation-fixed".into()
        },
    })
}

/// One attempted check in a witness, with its exact evaluated sides.
#[derive(Clone, Debug)]
pub struct TrailStep {
    pub step: String,
    pub gadget: Option<String>,
    pub lhs: String,
    pub rhs: String,
    pub outcome: String,
}

impl TrailStep {
    fn to_json(&self) -> Value {
        json!({
            "step": self.step,
            "gadget": self.gadget,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "outcome": self.outcome,
        })
    }
}

/// The first complete certificate found by the witness strategy.
#[derive(Clone, Debug)]
pub enum Terminal {
    /// Real-coordinate path: a binary recursive gadget passed the
    /// 3x3 distinct-norm and starter-factor tests.
    RealBinary {
        gadget: u32,
        cert: NormCertificate,
        h_value: Cyc12,
        finisher: FinisherSet,
        vc: VcParams,
    },
    /// A unary recursive gadget passed the 2x2 distinct-norm test.
    Unary {
        gadget: u32,
        cert: NormCertificate,
        starter: StarterSet,
        /// Index into the starter set and det[M v | v] for the chosen v.
        starter_choice: (usize, Cyc12),
        vc: VcParams,
    },
    /// Disjunctive certificate over a shift pair of gadgets.
    Esp {
        gadgets: (u32, u32),
        cert: NormCertificate,
        starter: StarterSet,
        vc: VcParams,
    },
    /// On the curve a^3 = b^3: certificate for the transformed equal
    /// parameter via the 2x2 special matrix.
    EqualParam {
        transformed: Cyc12,
        cert: NormCertificate,
        eigen_det: Cyc12,
        vc: VcParams,
    },
    /// Hardness holds by an external base point.
    Citation { reference: String },
    /// The strategy was exhausted; this is a reportable finding, not
    /// an error.
    Anomaly { detail: String },
}

impl Terminal {
    pub fn is_anomaly(&self) -> bool {
        matches!(self, Terminal::Anomaly { .. })
    }

    fn to_json(&self) -> Value {
        match self {
            Terminal::RealBinary {
                gadget,
                cert,
                h_value,
                finisher,
                vc,
            } => json!({
                "kind": "real-binary",
                "gadget": format!("M{gadget}"),
                "certificate": cert.to_json(),
                "h_value": h_value.to_string(),
                "finisher": finisher_json(finisher),
                "vc": vc_json(vc),
            }),
            Terminal::Unary {
                gadget,
                cert,
                starter,
                starter_choice,
                vc,
            } => json!({
                "kind": "unary",
                "gadget": format!("M{gadget}"),
                "certificate": cert.to_json(),
                "starter": starter_json(starter),
                "starter_choice": {
                    "index": starter_choice.0,
                    "eigen_det": starter_choice.1.to_string(),
                },
                "vc": vc_json(vc),
            }),
            Terminal::Esp {
                gadgets,
                cert,
                starter,
                vc,
            } => json!({
                "kind": "esp-disjunctive",
                "gadgets": [format!("M{}", gadgets.0), format!("M{}", gadgets.1)],
                "certificate": cert.to_json(),
                "starter": starter_json(starter),
                "vc": vc_json(vc),
            }),
            Terminal::EqualParam {
                transformed,
                cert,
                eigen_det,
                vc,
            } => json!({
                "kind": "equal-parameter",
                "transformed": transformed.to_string(),
                "certificate": cert.to_json(),
                "eigen_det": eigen_det.to_string(),
                "vc": vc_json(vc),
            }),
            Terminal::Citation { reference } => json!({
                "kind": "citation",
                "reference": reference,
            }),
            Terminal::Anomaly { detail } => json!({
                "kind": "anomaly",
                "detail": detail,
            }),
        }
    }
}

fn finisher_json(f: &FinisherSet) -> Value {
    json!({
        "branch": f.branch,
        "swapped": f.swapped,
        "independence_det": f.independence_det.to_string(),
        "reduced_det": f.reduced_det.to_string(),
        "cross_products": f
            .cross_products
            .iter()
            .map(|v| v.iter().map(|c| c.to_string()).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

fn starter_json(s: &StarterSet) -> Value {
    json!({
        "vectors": s
            .vectors
            .iter()
            .map(|v| v.iter().map(|c| c.to_string()).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "pairwise_dets": s.pairwise_dets.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    })
}

fn vc_json(vc: &VcParams) -> Value {
    let pair = |p: &[Cyc12; 2]| vec![p[0].to_string(), p[1].to_string()];
    json!({
        "case": vc.case_tag,
        "swapped": vc.swapped,
        "theta": pair(&vc.theta),
        "gamma": vc.gamma.as_ref().map(|g| pair(g)),
        "rho": vc.rho.as_ref().map(|r| pair(r)),
        "claimed_output": vc
            .claimed_output
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>(),
    })
}

#[derive(Clone, Debug)]
pub struct HardnessWitness {
    pub coordinates: Coordinates,
    pub trail: Vec<TrailStep>,
    pub terminal: Terminal,
    pub citations: Vec<String>,
}

impl HardnessWitness {
    pub fn to_json(&self) -> Value {
        json!({
            "point": self.coordinates.to_json(),
            "classification": "hard",
            "trail": self.trail.iter().map(TrailStep::to_json).collect::<Vec<_>>(),
            "terminal": self.terminal.to_json(),
            "citations": self.citations,
        })
    }
}

fn eval_xy(p_xy: &MPoly, x: &Cyc12, y: &Cyc12) -> Cyc12 {
    p_xy.eval(&[(Var::X, x.clone()), (Var::Y, y.clone())])
        .expect("catalog polynomials use only X and Y")
}

fn is_fixed(v: &Cyc12) -> bool {
    v.conj() == *v
}

/// Produce a machine-checkable hardness certificate for a point that
/// classifies as Hard in the general (non-planar) setting.
pub fn hardness_witness(a: &Cyc12, b: &Cyc12) -> Result<HardnessWitness, Error> {
    let cls = classify(a, b, false);
    if cls.verdict != Verdict::Hard {
        return Err(Error::NotHard);
    }
    let coords = cls.coordinates;
    let x = coords.x.clone();
    let y = coords.y.clone();
    let mut trail: Vec<TrailStep> = Vec::new();
    let mut citations: Vec<String> = Vec::new();

    // Curve branch: a^3 = b^3 with X != 1. Transform to an equal
    // parameter pair and certify via the 2x2 special matrix.
    if a.pow(3) == b.pow(3) {
        return curve_witness(a, b, coords, trail, citations);
    }
    trail.push(TrailStep {
        step: "curve check 4X^3 = Y^2".into(),
        gadget: None,
        lhs: (&Cyc12::from_int(4) * &x.pow(3)).to_string(),
        rhs: y.pow(2).to_string(),
        outcome: "off the curve".into(),
    });

    if is_fixed(&x) && is_fixed(&y) {
        // Real-coordinate path over the binary recursive gadgets.
        if x.is_zero() && y == -&Cyc12::one() {
            citations.push(
                "Hol(0,-1) counts vertex covers of 3-regular graphs, a known #P-hard problem"
                    .into(),
            );
            return Ok(HardnessWitness {
                coordinates: coords,
                trail,
                terminal: Terminal::Citation {
                    reference: "base point (X,Y) = (0,-1)".into(),
                },
                citations,
            });
        }
        for j in [4u32, 7, 8, 9] {
            let (bp, cp, dp) = charpoly_xy(j)?;
            let bj = eval_xy(&bp, &x, &y);
            let cj = eval_xy(&cp, &x, &y);
            let dj = eval_xy(&dp, &x, &y);
            let cert = distinct_norm_3x3(&bj, &cj, &dj);
            let hj = eval_xy(&h_factor(j)?, &x, &y);
            let ok = cert.kind == CertKind::Distinct3x3 && !hj.is_zero();
            trail.push(TrailStep {
                step: "binary distinct-norm and starter-factor test".into(),
                gadget: Some(format!("M{j}")),
                lhs: cert.lhs.to_string(),
                rhs: cert.rhs.to_string(),
                outcome: if ok {
                    "accepted".into()
                } else if cert.kind != CertKind::Distinct3x3 {
                    format!("rejected: {}", cert.note)
                } else {
                    "rejected: starter factor vanishes".into()
                },
            });
            if ok {
                let mut cert = cert;
                cert.gadgets = vec![format!("M{j}")];
                let finisher = finisher_set(a, b)?;
                let vc = vc_simulation_params(a, b)?;
                return Ok(HardnessWitness {
                    coordinates: coords,
                    trail,
                    terminal: Terminal::RealBinary {
                        gadget: j,
                        cert,
                        h_value: hj,
                        finisher,
                        vc,
                    },
                    citations,
                });
            }
        }
        // The scan theorem covers all remaining real hard points, so
        // falling through is an anomaly; still try the complex path
        // before reporting it.
    }

    // Unary recursive gadgets, in order.
    for j in [10u32, 11, 12, 13, 14, 15, 16] {
        let m = eval_ab(&recursion_matrix(j)?, a, b)?;
        let cert = distinct_norm_2x2(&m.trace(), &m.det());
        let ok = cert.kind == CertKind::Distinct2x2;
        trail.push(TrailStep {
            step: "unary distinct-norm test".into(),
            gadget: Some(format!("M{j}")),
            lhs: cert.lhs.to_string(),
            rhs: cert.rhs.to_string(),
            outcome: if ok {
                "accepted".into()
            } else {
                format!("rejected: {}", cert.note)
            },
        });
        if ok {
            let mut cert = cert;
            cert.gadgets = vec![format!("M{j}")];
            match assemble_unary_terminal(a, b, &m) {
                Ok((starter, starter_choice, vc)) => {
                    return Ok(HardnessWitness {
                        coordinates: coords,
                        trail,
                        terminal: Terminal::Unary {
                            gadget: j,
                            cert,
                            starter,
                            starter_choice,
                            vc,
                        },
                        citations,
                    });
                }
                Err(e) => {
                    trail.push(TrailStep {
                        step: "starter/simulation assembly".into(),
                        gadget: Some(format!("M{j}")),
                        lhs: String::new(),
                        rhs: String::new(),
                        outcome: format!("failed: {e}"),
                    });
                }
            }
        }
    }

    // Shift-pair fallback.
    let x_minus_one = &x - &Cyc12::one();
    for (pair, j, delta) in [
        ((10u32, 11u32), 10u32, x_minus_one.clone()),
        ((13, 14), 13, x_minus_one.pow(2)),
    ] {
        let m = eval_ab(&recursion_matrix(j)?, a, b)?;
        match esp_disjunctive(&m, &delta) {
            Ok(cert) => {
                let ok = cert.kind == CertKind::EspDisjunctive;
                trail.push(TrailStep {
                    step: "shift-pair disjunction".into(),
                    gadget: Some(format!("M{} / M{}", pair.0, pair.1)),
                    lhs: cert.lhs.to_string(),
                    rhs: cert.rhs.to_string(),
                    outcome: if ok {
                        "accepted".into()
                    } else {
                        format!("rejected: {}", cert.note)
                    },
                });
                if ok {
                    let mut cert = cert;
                    cert.gadgets = vec![format!("M{}", pair.0), format!("M{}", pair.1)];
                    match starter_set(a, b).and_then(|s| Ok((s, vc_simulation_params(a, b)?))) {
                        Ok((starter, vc)) => {
                            return Ok(HardnessWitness {
                                coordinates: coords,
                                trail,
                                terminal: Terminal::Esp {
                                    gadgets: pair,
                                    cert,
                                    starter,
                                    vc,
                                },
                                citations,
                            });
                        }
                        Err(e) => {
                            trail.push(TrailStep {
                                step: "starter/simulation assembly".into(),
                                gadget: Some(format!("M{} / M{}", pair.0, pair.1)),
                                lhs: String::new(),
                                rhs: String::new(),
                                outcome: format!("failed: {e}"),
                            });
                        }
                    }
                }
            }
            Err(e) => {
                trail.push(TrailStep {
                    step: "shift-pair disjunction".into(),
                    gadget: Some(format!("M{} / M{}", pair.0, pair.1)),
                    lhs: String::new(),
                    rhs: String::new(),
                    outcome: format!("precondition failed: {e}"),
                });
            }
        }
    }

    Ok(HardnessWitness {
        coordinates: coords,
        trail,
        terminal: Terminal::Anomaly {
            detail: "every strategy was inconclusive at a hard point".into(),
        },
        citations,
    })
}

fn assemble_unary_terminal(
    a: &Cyc12,
    b: &Cyc12,
    m: &CMat,
) -> Result<(StarterSet, (usize, Cyc12), Cyc12Vc), Error> {
    let starter = starter_set(a, b)?;
    // Three pairwise independent vectors against at most two
    // eigendirections: one of them is not an eigenvector of M.
    let mut choice = None;
    for (idx, v) in starter.vectors.iter().enumerate() {
        let mv = m.apply(v);
        let d = &(&mv[0] * &v[1]) - &(&mv[1] * &v[0]);
        if !d.is_zero() {
            choice = Some((idx, d));
            break;
        }
    }
    let choice = choice.ok_or_else(|| {
        Error::PreconditionViolation("every starter vector is an eigenvector".into())
    })?;
    let vc = vc_simulation_params(a, b)?;
    Ok((starter, choice, vc))
}

type Cyc12Vc = VcParams;

fn curve_witness(
    a: &Cyc12,
    b: &Cyc12,
    coords: Coordinates,
    mut trail: Vec<TrailStep>,
    mut citations: Vec<String>,
) -> Result<HardnessWitness, Error> {
    // a = 0 would force b = 0 (tractable), so a is invertible here.
    let omega = (b / a)?;
    trail.push(TrailStep {
        step: "curve branch: omega = b/a is a cube root of unity".into(),
        gadget: None,
        lhs: omega.pow(3).to_string(),
        rhs: "1".into(),
        outcome: "transforming to equal parameters".into(),
    });
    let (ap, bp) = holographic_diag_transform(a, b, &omega)?;
    debug_assert_eq!(ap, bp);
    if is_fixed(&ap) {
        citations.push(
            "for real equal parameters off X = 1, hardness is a known real-coordinate result"
                .into(),
        );
        return Ok(HardnessWitness {
            coordinates: coords,
            trail,
            terminal: Terminal::Citation {
                reference: format!("equal real parameter a = b = {ap}"),
            },
            citations,
        });
    }
    let m = crate::gadgets::ab_equal_matrix()
        .eval(&[(Var::A, ap.clone()), (Var::B, ap.clone())])?;
    let cert = distinct_norm_2x2(&m.trace(), &m.det());
    let s = [ap.clone(), Cyc12::one()];
    let ms = m.apply(&s);
    let eigen_det = &(&ms[0] * &s[1]) - &(&ms[1] * &s[0]);
    trail.push(TrailStep {
        step: "equal-parameter distinct-norm test".into(),
        gadget: Some("vc2x2".into()),
        lhs: cert.lhs.to_string(),
        rhs: cert.rhs.to_string(),
        outcome: if cert.kind == CertKind::Distinct2x2 {
            "accepted".into()
        } else {
            format!("rejected: {}", cert.note)
        },
    });
    if cert.kind == CertKind::Distinct2x2 && !eigen_det.is_zero() {
        let mut cert = cert;
        cert.gadgets = vec!["vc2x2".into()];
        let vc = vc_simulation_params(&ap, &bp)?;
        return Ok(HardnessWitness {
            coordinates: coords,
            trail,
            terminal: Terminal::EqualParam {
                transformed: ap,
                cert,
                eigen_det,
                vc,
            },
            citations,
        });
    }
    Ok(HardnessWitness {
        coordinates: coords,
        trail,
        terminal: Terminal::Anomaly {
            detail: format!(
                "equal-parameter certificate failed at transformed a = {ap} (eigen det {eigen_det})"
            ),
        },
        citations,
    })
}

/// Report of the real-coordinate disjunction scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    pub points_checked: usize,
    pub points_skipped: usize,
    pub counterexamples: Vec<(Rat, Rat)>,
}

struct RatPoly {
    terms: Vec<(u32, u32, Rat)>,
    max_x: u32,
    max_y: u32,
}

impl RatPoly {
    fn from_xy(p_xy: &MPoly) -> Self {
        let mut terms = Vec::new();
        let (mut max_x, mut max_y) = (0, 0);
        for (e, c) in p_xy.terms() {
            let r = c
                .as_rat()
                .expect("scan polynomials have rational coefficients")
                .clone();
            terms.push((e[2] as u32, e[3] as u32, r));
            max_x = max_x.max(e[2] as u32);
            max_y = max_y.max(e[3] as u32);
        }
        RatPoly { terms, max_x, max_y }
    }

    fn eval(&self, xp: &[Rat], yp: &[Rat]) -> Rat {
        let mut acc = Rat::from_integer(0.into());
        for (i, j, c) in &self.terms {
            acc += c * &xp[*i as usize] * &yp[*j as usize];
        }
        acc
    }
}

struct ScanTables {
    /// (B, C, D, h) per gadget in {4, 7, 8, 9}.
    gadgets: Vec<(u32, RatPoly, RatPoly, RatPoly, RatPoly)>,
    max_x: u32,
    max_y: u32,
}

impl ScanTables {
    fn build() -> Self {
        let mut gadgets = Vec::new();
        let (mut max_x, mut max_y) = (0, 0);
        for j in [4u32, 7, 8, 9] {
            let (b, c, d) = charpoly_xy(j).unwrap();
            let h = h_factor(j).unwrap();
            let row = (
                j,
                RatPoly::from_xy(&b),
                RatPoly::from_xy(&c),
                RatPoly::from_xy(&d),
                RatPoly::from_xy(&h),
            );
            for p in [&row.1, &row.2, &row.3, &row.4] {
                max_x = max_x.max(p.max_x);
                max_y = max_y.max(p.max_y);
            }
            gadgets.push(row);
        }
        // Cubing B, C, D triples the needed power range.
        ScanTables {
            gadgets,
            max_x: max_x * 3,
            max_y: max_y * 3,
        }
    }

    /// True when some gadget certifies (X, Y).
    fn point_passes(&self, x: &Rat, y: &Rat) -> bool {
        let powers = |v: &Rat, n: u32| {
            let mut out = Vec::with_capacity(n as usize + 1);
            out.push(Rat::from_integer(1.into()));
            for k in 1..=n as usize {
                let next = &out[k - 1] * v;
                out.push(next);
            }
            out
        };
        let xp = powers(x, self.max_x);
        let yp = powers(y, self.max_y);
        let zero = Rat::from_integer(0.into());
        for (_, b, c, d, h) in &self.gadgets {
            let dv = d.eval(&xp, &yp);
            if dv == zero {
                continue;
            }
            let hv = h.eval(&xp, &yp);
            if hv == zero {
                continue;
            }
            let bv = b.eval(&xp, &yp);
            let cv = c.eval(&xp, &yp);
            if &bv * &bv * &bv * &dv != &cv * &cv * &cv {
                return true;
            }
        }
        false
    }
}

fn rat_grid(lo: &Rat, hi: &Rat, step: &Rat) -> Vec<Rat> {
    let mut out = Vec::new();
    let mut v = lo.clone();
    while &v <= hi {
        out.push(v.clone());
        v += step;
    }
    out
}

fn scan_excluded(x: &Rat, y: &Rat) -> bool {
    let one = Rat::from_integer(1.into());
    let zero = Rat::from_integer(0.into());
    if *x == one {
        return true;
    }
    if Rat::from_integer(4.into()) * x * x * x == y * y {
        return true;
    }
    if *x == zero && *y == -&one {
        return true;
    }
    if *x == -&one && *y == zero {
        return true;
    }
    false
}

fn scan_row(tables: &ScanTables, x: &Rat, ys: &[Rat]) -> (usize, usize, Vec<(Rat, Rat)>) {
    let mut checked = 0;
    let mut skipped = 0;
    let mut bad = Vec::new();
    for y in ys {
        if scan_excluded(x, y) {
            skipped += 1;
            continue;
        }
        checked += 1;
        if !tables.point_passes(x, y) {
            bad.push((x.clone(), y.clone()));
        }
    }
    (checked, skipped, bad)
}

/// Verify over a rational grid that, away from the excluded set
/// {X = 1, 4X^3 = Y^2, (0,-1), (-1,0)}, some gadget in {4, 7, 8, 9}
/// has D (B^3 D - C^3) h != 0.
pub fn real_disjunction_scan(
    x_range: (Rat, Rat),
    y_range: (Rat, Rat),
    step: &Rat,
) -> Result<ScanReport, Error> {
    if *step <= Rat::from_integer(0.into()) {
        return Err(Error::PreconditionViolation("step must be positive".into()));
    }
    let tables = ScanTables::build();
    let xs = rat_grid(&x_range.0, &x_range.1, step);
    let ys = rat_grid(&y_range.0, &y_range.1, step);
    let rows: Vec<(usize, usize, Vec<(Rat, Rat)>)>;
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        rows = xs.par_iter().map(|x| scan_row(&tables, x, &ys)).collect();
    }
    #[cfg(not(feature = "parallel"))]
    {
        rows = xs.iter().map(|x| scan_row(&tables, x, &ys)).collect();
    }
    let mut report = ScanReport {
        points_checked: 0,
        points_skipped: 0,
        counterexamples: Vec::new(),
    };
    for (checked, skipped, bad) in rows {
        report.points_checked += checked;
        report.points_skipped += skipped;
        report.counterexamples.extend(bad);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::rat;

    fn c(n: i64) -> Cyc12 {
        Cyc12::from_int(n)
    }

    #[test]
    fn classify_catalogue() {
        assert!(matches!(
            classify(&c(1), &c(1), false).verdict,
            Verdict::Tractable { case: 1, .. }
        ));
        assert!(matches!(
            classify(&c(0), &c(0), false).verdict,
            Verdict::Tractable { case: 2, .. }
        ));
        assert!(matches!(
            classify(&c(1), &c(-1), false).verdict,
            Verdict::Tractable { case: 3, .. }
        ));
        let i = Cyc12::i();
        assert!(matches!(
            classify(&i, &i, false).verdict,
            Verdict::Tractable { case: 3, .. }
        ));
        assert!(matches!(
            classify(&-&i, &-&i, false).verdict,
            Verdict::Tractable { case: 3, .. }
        ));
        assert_eq!(classify(&c(0), &c(1), false).verdict, Verdict::Hard);
        assert_eq!(classify(&c(2), &c(3), false).verdict, Verdict::Hard);
        let one_plus_i = &c(1) + &i;
        assert_eq!(classify(&one_plus_i, &c(1), false).verdict, Verdict::Hard);
        assert_eq!(
            classify(&c(2), &c(2), true).verdict,
            Verdict::PlanarTractableGeneralHard
        );
        assert_eq!(classify(&c(2), &c(2), false).verdict, Verdict::Hard);
        assert_eq!(classify(&c(0), &c(2), false).verdict, Verdict::Hard);
    }

    #[test]
    fn equivalence_samples() {
        let i = Cyc12::i();
        assert!(coordinates_equivalence_check(&i, &i));
        assert!(coordinates_equivalence_check(&c(1), &c(-1)));
        assert!(coordinates_equivalence_check(&c(2), &c(3)));
        assert!(coordinates_equivalence_check(&c(2), &c(2)));
    }

    #[test]
    fn norm_2x2_examples() {
        // tr = 3 - i, det = 2 - 2i: sides 28 + 4i vs 28 - 4i.
        let tr = &c(3) - &Cyc12::i();
        let det = &c(2) - &(&c(2) * &Cyc12::i());
        let cert = distinct_norm_2x2(&tr, &det);
        assert_eq!(cert.kind, CertKind::Distinct2x2);
        assert_eq!(cert.lhs, &c(28) + &(&c(4) * &Cyc12::i()));
        assert_eq!(cert.rhs, &c(28) - &(&c(4) * &Cyc12::i()));

        assert_eq!(distinct_norm_2x2(&c(5), &c(3)).kind, CertKind::Inconclusive);
        let z = distinct_norm_2x2(&tr, &c(0));
        assert_eq!(z.kind, CertKind::Inconclusive);
        assert!(z.note.contains("zero eigenvalue"));
    }

    #[test]
    fn norm_3x3_examples() {
        // Roots 1, 2, 3.
        let cert = distinct_norm_3x3(&c(-6), &c(11), &c(-6));
        assert_eq!(cert.kind, CertKind::Distinct3x3);
        assert_eq!(cert.lhs, c(1331));
        assert_eq!(cert.rhs, c(1296));
        // All roots of norm 1.
        assert_eq!(
            distinct_norm_3x3(&c(0), &c(0), &c(-1)).kind,
            CertKind::Inconclusive
        );
        // Gadget 7 at (X, Y) = (0, 1): B = -3, C = -4, D = 2.
        let (b, cpoly, d) = charpoly_xy(7).unwrap();
        let bv = eval_xy(&b, &c(0), &c(1));
        let cv = eval_xy(&cpoly, &c(0), &c(1));
        let dv = eval_xy(&d, &c(0), &c(1));
        assert_eq!((bv.clone(), cv.clone(), dv.clone()), (c(-3), c(-4), c(2)));
        assert_eq!(distinct_norm_3x3(&bv, &cv, &dv).kind, CertKind::Distinct3x3);
    }

    #[test]
    fn esp_example() {
        // M10 at (1+i, 1): delta = X - 1 = i.
        let a = &c(1) + &Cyc12::i();
        let m = eval_ab(&recursion_matrix(10).unwrap(), &a, &c(1)).unwrap();
        let delta = Cyc12::i();
        let cert = esp_disjunctive(&m, &delta).unwrap();
        assert_eq!(cert.kind, CertKind::EspDisjunctive);
        // tr/delta = (1 + 2i)/i = 2 - i.
        assert_eq!(cert.lhs, &c(2) - &Cyc12::i());

        assert!(matches!(
            esp_disjunctive(&m, &c(0)),
            Err(Error::PreconditionViolation(_))
        ));
    }

    #[test]
    fn witness_examples() {
        // (0,1): real path; gadget 4 rejected (D4 = 0 at X = 0),
        // gadget 7 accepted with h7 = 2.
        let w = hardness_witness(&c(0), &c(1)).unwrap();
        match &w.terminal {
            Terminal::RealBinary { gadget, h_value, .. } => {
                assert_eq!(*gadget, 7);
                assert_eq!(*h_value, c(2));
            }
            other => panic!("expected real-binary terminal, got {other:?}"),
        }
        assert!(w
            .trail
            .iter()
            .any(|t| t.gadget.as_deref() == Some("M4") && t.outcome.starts_with("rejected")));

        // (1+i, 1): complex path.
        let a = &c(1) + &Cyc12::i();
        let w = hardness_witness(&a, &c(1)).unwrap();
        assert!(!w.terminal.is_anomaly());

        // Tractable points refuse.
        let i = Cyc12::i();
        assert!(matches!(hardness_witness(&i, &i), Err(Error::NotHard)));

        // Curve point (2,2).
        let w = hardness_witness(&c(2), &c(2)).unwrap();
        assert!(matches!(w.terminal, Terminal::Citation { .. }));

        // Curve point with complex transformed parameter.
        let zeta4 = Cyc12::zeta_pow(4);
        let a = &c(2) * &zeta4; // a^3 = 8, b = 2: a^3 = b^3, a complex
        let w = hardness_witness(&a, &c(2)).unwrap();
        assert!(
            matches!(w.terminal, Terminal::EqualParam { .. }),
            "terminal {:?}",
            w.terminal
        );

        // (X, Y) = (0, -1) base point: a = 0, b^3 = -1.
        let w = hardness_witness(&c(0), &c(-1)).unwrap();
        assert!(matches!(w.terminal, Terminal::Citation { .. }));
    }

    #[test]
    fn tiny_scan_clean() {
        let r = real_disjunction_scan(
            (rat(-2, 1), rat(2, 1)),
            (rat(-2, 1), rat(2, 1)),
            &rat(1, 2),
        )
        .unwrap();
        assert!(r.counterexamples.is_empty(), "{:?}", r.counterexamples);
        assert!(r.points_checked > 0);
        assert!(r.points_skipped > 0);
    }
}
