//! Named verification suites over one signature, shared by the command
//! line and the acceptance tests.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::ckclassical::{c0, is_j_orthogonal, preserves_c0, random_cayley, symplectic_d, to_symplectic};
use crate::coeffring::JSignature;
use crate::error::{Error, Result};
use crate::freealg::{NCPoly, DEFAULT_STEP_CAP};
use crate::matrix::Matrix;
use crate::qdual::{self, entry_counit, entry_monomials, DualPairing, Sign};
use crate::qgroup::{self, build_t, classical_relations, classical_substitution, Report, Source, Verdict};
use crate::rmatrix::{projector_check, r_and_c, verify_cubic, verify_ybe};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Ybe,
    Cubic,
    Projector,
    Classical,
    Coassoc,
    Counit,
    Delta,
    Antipode,
    Contraction,
    Ll,
    Ladd,
    Pairing,
    Sdual,
    Limit,
}

impl Suite {
    pub const ALL: [Suite; 14] = [
        Suite::Ybe,
        Suite::Cubic,
        Suite::Projector,
        Suite::Classical,
        Suite::Coassoc,
        Suite::Counit,
        Suite::Delta,
        Suite::Antipode,
        Suite::Contraction,
        Suite::Ll,
        Suite::Ladd,
        Suite::Pairing,
        Suite::Sdual,
        Suite::Limit,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Ybe => "ybe",
            Suite::Cubic => "cubic",
            Suite::Projector => "projector",
            Suite::Classical => "classical",
            Suite::Coassoc => "coassoc",
            Suite::Counit => "counit",
            Suite::Delta => "delta",
            Suite::Antipode => "antipode",
            Suite::Contraction => "contraction",
            Suite::Ll => "ll",
            Suite::Ladd => "ladd",
            Suite::Pairing => "pairing",
            Suite::Sdual => "sdual",
            Suite::Limit => "limit",
        }
    }

    /// Comma-separated names; `all` expands to every suite. Duplicates are
    /// dropped and the result follows the canonical order.
    pub fn parse_list(s: &str) -> Result<Vec<Suite>> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part == "all" {
                out.extend(Suite::ALL);
            } else {
                out.push(part.parse()?);
            }
        }
        if out.is_empty() {
            return Err(Error::Parse("empty suite list".into()));
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite '{s}'")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub signature: JSignature,
    pub step_cap: usize,
    pub degree: usize,
    pub seed: u64,
    /// Random group elements (and pairs) for the classical suite.
    pub samples: usize,
}

impl SuiteConfig {
    pub fn new(signature: JSignature) -> Self {
        SuiteConfig { signature, step_cap: DEFAULT_STEP_CAP, degree: 2, seed: 0, samples: 100 }
    }
}

fn single(ok: bool, what: &str) -> Report {
    let mut rep = Report::default();
    rep.record(Verdict::from_bool(ok), || what.to_string());
    rep
}

fn merge(into: &mut Report, other: Report) {
    into.checked += other.checked;
    into.details.extend(other.details);
    into.verdict = into.verdict.and(other.verdict);
}

pub fn run(suite: Suite, cfg: &SuiteConfig) -> Result<Report> {
    let j = &cfg.signature;
    match suite {
        Suite::Ybe => {
            let (r, _) = r_and_c(j)?;
            Ok(single(verify_ybe(&r), "R12 R13 R23 = R23 R13 R12"))
        }
        Suite::Cubic => {
            let (r, _) = r_and_c(j)?;
            Ok(single(verify_cubic(&r), "(R^ - q)(R^ + q^-1)(R^ - q^(1-N)) = 0"))
        }
        Suite::Projector => {
            let (r, c) = r_and_c(j)?;
            Ok(single(projector_check(&r, &c)?, "metric projector of R^ matches C"))
        }
        Suite::Classical => classical_suite(j, cfg.samples, cfg.seed),
        Suite::Coassoc => qgroup::verify_coassociativity(&build_t(j)?),
        Suite::Counit => {
            let t = build_t(j)?;
            let mut rep = qgroup::verify_counit(&t)?;
            let (_, rel) = qgroup::relations_for(j)?;
            merge(&mut rep, qgroup::verify_counit_on_relations(&t, &rel));
            Ok(rep)
        }
        Suite::Delta => qgroup::verify_delta_compat(j),
        Suite::Antipode => qgroup::verify_antipode(j, cfg.step_cap),
        Suite::Contraction => {
            Ok(single(qgroup::verify_contraction_commutes(j)?, "specialize then generate = generate then specialize"))
        }
        Suite::Ll => Ok(qdual::verify_ll(&DualPairing::new(j)?, cfg.degree)),
        Suite::Ladd => qdual::verify_l_additional(&DualPairing::new(j)?, cfg.degree),
        Suite::Pairing => {
            let p = DualPairing::new(j)?;
            let (_, rel) = qgroup::relations_for(j)?;
            let mut rep = qdual::verify_well_defined(&p, &rel)?;
            merge(&mut rep, qdual::verify_triangularity(&p, cfg.degree));
            merge(&mut rep, degree_one_table(&p));
            let (len, deg) = if j.dim() == 3 { (3, 3) } else { (2, cfg.degree) };
            merge(&mut rep, qdual::verify_iteration_oracle(&p, len, deg));
            Ok(rep)
        }
        Suite::Sdual => qdual::verify_l_hopf(&DualPairing::new(j)?),
        Suite::Limit => classical_limit(j, cfg.degree, cfg.seed),
    }
}

/// The degree-1 tables are `R^{(±)}` entrywise.
fn degree_one_table(p: &DualPairing) -> Report {
    let mut rep = Report::default();
    for sign in Sign::BOTH {
        let table = p.table(sign, 1);
        let r = p.r_sigma(sign);
        let ok = table.entries.iter().all(|(m, v)| {
            let (k, l) = m[0];
            v.entries().all(|(i, jj, x)| *x == r.entry(i + 1, k, jj + 1, l))
        });
        rep.record(Verdict::from_bool(ok), || format!("degree-1 table of L{} equals R{}", sign.symbol(), sign.symbol()));
    }
    rep
}

/// Random Cayley elements `A`: `A Aᵗ = Aᵗ A = I` and the weight pattern;
/// `D C₀ Dᵗ = I`; `B = D⁻¹AD` preserves `C₀`; on pairs, `A₁A₂` is again
/// j-orthogonal and weighted and `A ↦ D⁻¹AD` is multiplicative.
pub fn classical_suite(j: &JSignature, samples: usize, seed: u64) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = j.dim();
    let n = j.n();
    let mut rep = Report::default();
    let d = symplectic_d(dim, n);
    rep.record(Verdict::from_bool(d.mul(&c0(dim, n)).mul(&d.transpose()).is_identity()), || "D C0 Dt = I".into());
    for s in 0..samples {
        let a = random_cayley(j, &mut rng)?;
        let b = random_cayley(j, &mut rng)?;
        let ok = is_j_orthogonal(&a.matrix) && a.has_weight_pattern();
        rep.record(Verdict::from_bool(ok), || format!("sample {s}: A At = At A = I with weights"));
        let sa = to_symplectic(&a);
        rep.record(Verdict::from_bool(preserves_c0(&sa.matrix)), || format!("sample {s}: B C0 Bt = Bt C0 B = C0"));
        let ab = a.mul(&b);
        let ok = is_j_orthogonal(&ab.matrix) && ab.has_weight_pattern();
        rep.record(Verdict::from_bool(ok), || format!("pair {s}: product is j-orthogonal with weights"));
        let hom = to_symplectic(&ab).matrix == sa.matrix.mul(&to_symplectic(&b).matrix);
        rep.record(Verdict::from_bool(hom), || format!("pair {s}: D^-1 (A1 A2) D = B1 B2"));
    }
    Ok(rep)
}

fn commutator(a: &NCPoly, b: &NCPoly) -> NCPoly {
    let mut c = a.mul(b);
    c.sub_assign(&b.mul(a));
    c
}

/// At `v = 0` (contracted) or `q = 1` (formal): `R = I`, `C = C₀`, the RTT
/// relations are exactly the commutators of entries, every relation
/// vanishes on classical group elements, and the pairing tables are
/// Kronecker deltas.
pub fn classical_limit(j: &JSignature, degree: usize, seed: u64) -> Result<Report> {
    let dim = j.dim();
    let n = j.n();
    let mut rep = Report::default();
    let (r, c) = r_and_c(j)?;
    let (r0, cc) = (r.at_v_zero().at_q_one(), c.map(|x| x.at_v_zero().at_q_one()));
    rep.record(Verdict::from_bool(r0.matrix.is_identity()), || "R = I".into());
    rep.record(Verdict::from_bool(cc == c0(dim, n)), || "C = C0".into());

    let (t, rel) = classical_relations(j)?;
    let rtt: Vec<NCPoly> =
        rel.relations.iter().filter(|x| x.source == Source::Rtt).map(|x| x.poly.clone()).collect();
    let mut commutators = Vec::new();
    for a in 1..=dim {
        for b in 1..=dim {
            for cidx in 1..=dim {
                for d in 1..=dim {
                    if let Some(p) = qgroup::canonicalize(&commutator(&t.entry(a, b, 0), &t.entry(cidx, d, 0))) {
                        commutators.push(p);
                    }
                }
            }
        }
    }
    let same = rtt.iter().all(|p| commutators.contains(p)) && commutators.iter().all(|p| rtt.contains(p));
    rep.record(Verdict::from_bool(same), || "RTT relations are the commutators of entries".into());

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for s in 0..5 {
        let a = random_cayley(j, &mut rng)?;
        let values = classical_substitution(&t, &a)?;
        let bad: Vec<String> = rel
            .relations
            .iter()
            .filter(|x| !x.poly.evaluate(|g| values[&g.with_copy(0)].clone()).is_zero())
            .map(|x| x.label.clone())
            .collect();
        rep.record(Verdict::from_bool(bad.is_empty()), || format!("sample {s}: relations nonzero at {bad:?}"));
    }

    let pairing = DualPairing::from_parts(t, r0, cc)?;
    for sign in Sign::BOTH {
        for deg in 0..=degree {
            let ok = entry_monomials(dim, deg).iter().all(|m| {
                let v = pairing.single(sign, m);
                v == Matrix::identity(dim, n).scale(&entry_counit(m, n))
            });
            rep.record(Verdict::from_bool(ok), || format!("L{} table at degree {deg} is delta", sign.symbol()));
        }
    }
    Ok(rep)
}
