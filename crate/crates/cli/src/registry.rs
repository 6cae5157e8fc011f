//! The verification suite: claims as data, and the interpreter that runs
//! them.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use workbench::checker::{
    check_idempotent_image, check_identity, confirm_counterexample, image_set, CheckConfig,
    IdentityReport, Mode, Verdict,
};
use workbench::families::{
    kadourek_generators, kadourek_semigroup, rook_closure, PartialInjection,
};
use workbench::order::{aperiodicity_index, inf_table, nat_sum_formula, natural_order};
use workbench::structure::{classify_hm, principal_series};
use workbench::terms::{
    build_u, build_v, build_v_composed, parse_term, phi_psi, ComposedWord, Flavor, Term,
    VariableId, Word,
};
use workbench::{Error, Result};

use crate::spec::parse_spec;

/// A word family member: `u_{n,k,m}` or `v_{n,m}^(h)`.
#[derive(Debug, Clone, Copy)]
pub enum Family {
    U { n: usize, k: usize, m: usize },
    V { n: usize, m: usize, h: usize },
}

impl Family {
    fn build(self) -> Result<Word> {
        match self {
            Family::U { n, k, m } => build_u(n, k, m),
            Family::V { n, m, h } => build_v(n, m, h),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expect {
    Holds,
    Fails,
}

#[derive(Debug, Clone, Copy)]
pub enum Check {
    /// `lhs ≈ rhs`, exhaustively; `+` selects the semiring view.
    Identity {
        algebra: &'static str,
        lhs: &'static str,
        rhs: &'static str,
        expect: Expect,
    },
    /// `w ≈ w²`, exhaustively on the flat word.
    Square {
        algebra: &'static str,
        word: Family,
        expect: Expect,
    },
    /// `v ≈ v²` through hierarchical image sets.
    ImageSquare {
        algebra: &'static str,
        n: usize,
        m: usize,
        h: usize,
        expect: Expect,
    },
    /// `u_{n,k,m} ≈ u²` for `m` the group exponent, all `0 < n+k ≤ max_vars`,
    /// on `B_{G,I}` for each listed group and `|I| ≤ max_index`.
    USweep {
        groups: &'static [&'static str],
        max_index: usize,
        max_vars: usize,
    },
    /// `v_{n,m}^(1) ≈ square` on the subsemigroup of idempotents together
    /// with the second ideal of the principal series.
    FirstIdeal {
        algebra: &'static str,
        n: usize,
        m: usize,
    },
    /// The image set of `v_{n,m}^(1)` lies in the subsemigroup `within`,
    /// compared by element label.
    Containment {
        algebra: &'static str,
        n: usize,
        m: usize,
        within: &'static str,
    },
    /// `v_{n,m}^(h) ≈ square` fails on `S_n^(h)` at `τ = ζ∘φ`, with
    /// `ζ(x) = χ_x⁻¹`, and the left side is `{(2n)^h → 0}`.
    KadourekWitness { n: usize, h: usize, m: usize },
    /// `(x y⁻¹)^p x` equals the natural-order infimum for all pairs.
    NatFormula { algebra: &'static str },
    /// On `R_t` the infimum is the entrywise product.
    Hadamard { t: usize },
    /// `classify_hm` summary line.
    Classify {
        algebra: &'static str,
        summary: &'static str,
    },
}

#[derive(Debug, Clone, Copy)]
pub struct Claim {
    pub id: &'static str,
    pub statement: &'static str,
    pub checks: &'static [Check],
}

use Check::*;
use Expect::*;

pub const REGISTRY: &[Claim] = &[
    Claim {
        id: "lemma2.1",
        statement: "u_{n,k,m} = u_{n,k,m}^2 on Brandt semigroups over abelian groups of exponent dividing m",
        checks: &[
            USweep {
                groups: &["1", "2", "3", "2,2"],
                max_index: 3,
                max_vars: 4,
            },
            // exponent 3 does not divide m = 1
            Square {
                algebra: "brandt:3:2",
                word: Family::U { n: 2, k: 2, m: 1 },
                expect: Fails,
            },
        ],
    },
    Claim {
        id: "lemma2.2",
        statement: "v_{n,m}^(1) is idempotent-valued on E(S) with the first nonzero ideal",
        checks: &[
            FirstIdeal { algebra: "adjoin1:brandt:1:1", n: 2, m: 1 },
            FirstIdeal { algebra: "adjoin1:brandt:1:2", n: 2, m: 1 },
            FirstIdeal { algebra: "adjoin1:brandt:1:3", n: 2, m: 1 },
            FirstIdeal { algebra: "adjoin1:brandt:2:1", n: 2, m: 2 },
            FirstIdeal { algebra: "adjoin1:brandt:2:2", n: 2, m: 2 },
            FirstIdeal { algebra: "adjoin1:brandt:2:3", n: 2, m: 2 },
        ],
    },
    Claim {
        id: "prop2.3",
        statement: "(h,m)-semigroups with zero bottom satisfy v_{n,m}^(h) = square",
        checks: &[
            Classify { algebra: "brandt:2:2", summary: "(h,m)=1,2" },
            ImageSquare { algebra: "brandt:2:2", n: 2, m: 2, h: 1, expect: Holds },
            Classify { algebra: "adjoin1:brandt:2:2", summary: "(h,m)=2,2" },
            ImageSquare { algebra: "adjoin1:brandt:2:2", n: 2, m: 2, h: 2, expect: Holds },
            Classify { algebra: "adjoin1:brandt:3:2", summary: "(h,m)=2,3" },
            ImageSquare { algebra: "adjoin1:brandt:3:2", n: 2, m: 3, h: 2, expect: Holds },
        ],
    },
    Claim {
        id: "prop2.5",
        statement: "(h,m)-semigroups satisfy v_{n,m}^(h+1) = square",
        checks: &[
            Classify { algebra: "product:group:2,brandt:2:2", summary: "(h,m)=1,2" },
            ImageSquare { algebra: "product:group:2,brandt:2:2", n: 2, m: 2, h: 2, expect: Holds },
            Classify { algebra: "group:2,2", summary: "(h,m)=0,2" },
            ImageSquare { algebra: "group:2,2", n: 2, m: 2, h: 1, expect: Holds },
        ],
    },
    Claim {
        id: "prop2.6.1",
        statement: "R_2 is a (2,2)-semigroup and satisfies v_{n,2}^(2) = square",
        checks: &[
            Classify { algebra: "rook:2", summary: "(h,m)=2,2" },
            ImageSquare { algebra: "rook:2", n: 2, m: 2, h: 2, expect: Holds },
            ImageSquare { algebra: "rook:2", n: 3, m: 2, h: 2, expect: Holds },
        ],
    },
    Claim {
        id: "prop2.6.2",
        statement: "R'_3 is a (3,6)-semigroup and R_3 satisfies v_{n,6}^(4) = square",
        checks: &[
            Classify { algebra: "rook3-restricted", summary: "(h,m)=3,6" },
            ImageSquare { algebra: "rook:3", n: 2, m: 6, h: 4, expect: Holds },
        ],
    },
    Claim {
        id: "r3prime.containment",
        statement: "every value of v_{2,6}^(1) on R_3 lies in R'_3",
        checks: &[Containment {
            algebra: "rook:3",
            n: 2,
            m: 6,
            within: "rook3-restricted",
        }],
    },
    Claim {
        id: "cor3.2",
        statement: "x^2 = x^3 on the Kadourek semigroups S_2^(1) and S_2^(2)",
        checks: &[
            Identity { algebra: "kadourek:2:1", lhs: "x x", rhs: "x x x", expect: Holds },
            Identity { algebra: "kadourek:2:2", lhs: "x x", rhs: "x x x", expect: Holds },
        ],
    },
    Claim {
        id: "prop3.3",
        statement: "v_{n,m}^(h) = square fails on S_n^(h), witnessed through w_n^(h)",
        checks: &[
            KadourekWitness { n: 2, h: 1, m: 1 },
            KadourekWitness { n: 2, h: 1, m: 2 },
            KadourekWitness { n: 2, h: 2, m: 1 },
            KadourekWitness { n: 3, h: 1, m: 1 },
        ],
    },
    Claim {
        id: "lemma4.1",
        statement: "the natural sum is (x y^-1)^p x in aperiodic inverse semigroups",
        checks: &[
            NatFormula { algebra: "b21" },
            NatFormula { algebra: "sigma7" },
            Hadamard { t: 2 },
            Hadamard { t: 3 },
        ],
    },
    Claim {
        id: "remark1.3",
        statement: "x y = x + y on the natural semiring of the two-element semilattice",
        checks: &[Identity { algebra: "rook:1", lhs: "x*y", rhs: "x+y", expect: Holds }],
    },
    Claim {
        id: "remark4.3",
        statement: "(xy+yx)^2 = x^2+y^2 separates the two additions on Sigma_7",
        checks: &[
            Identity { algebra: "sigma7:nat", lhs: "(x*y+y*x)^2", rhs: "x^2+y^2", expect: Holds },
            Identity { algebra: "sigma7:bool", lhs: "(x*y+y*x)^2", rhs: "x^2+y^2", expect: Fails },
        ],
    },
];

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub pass: bool,
    pub substitutions: BigUint,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct ClaimResult {
    pub id: &'static str,
    pub statement: &'static str,
    pub pass: bool,
    pub checks: usize,
    pub substitutions: BigUint,
    pub elapsed: Duration,
    /// First failing check, if any.
    pub failure: Option<String>,
}

#[derive(Debug, Clone)]
pub struct VerificationSuiteResult {
    pub claims: Vec<ClaimResult>,
}

impl VerificationSuiteResult {
    pub fn all_pass(&self) -> bool {
        self.claims.iter().all(|c| c.pass)
    }

    /// One row per claim; `timing` adds elapsed seconds.
    pub fn render(&self, timing: bool) -> String {
        let mut out = String::new();
        for c in &self.claims {
            out.push_str(&format!(
                "CLAIM {} {} CHECKS {} SUBSTITUTIONS {}",
                c.id,
                if c.pass { "PASS" } else { "FAIL" },
                c.checks,
                c.substitutions
            ));
            if timing {
                out.push_str(&format!(
                    " TIME {:.2}s\n  {}",
                    c.elapsed.as_secs_f64(),
                    c.statement
                ));
            }
            if let Some(f) = &c.failure {
                out.push_str(&format!("\n  failure: {}", f));
            }
            out.push('\n');
        }
        let passed = self.claims.iter().filter(|c| c.pass).count();
        out.push_str(&format!("SUMMARY {}/{} PASS\n", passed, self.claims.len()));
        out
    }
}

/// Claims whose id matches `filter` (a glob; all when `None`).
pub fn select(filter: Option<&str>) -> Result<Vec<&'static Claim>> {
    let pattern = filter
        .map(glob::Pattern::new)
        .transpose()
        .map_err(|e| Error::BadSpec(format!("filter: {}", e)))?;
    Ok(REGISTRY
        .iter()
        .filter(|c| pattern.as_ref().is_none_or(|p| p.matches(c.id)))
        .collect())
}

pub fn run_suite(filter: Option<&str>, cfg: &CheckConfig) -> Result<VerificationSuiteResult> {
    let claims = select(filter)?
        .into_iter()
        .map(|c| run_claim(c, cfg))
        .collect();
    Ok(VerificationSuiteResult { claims })
}

pub fn run_claim(claim: &Claim, cfg: &CheckConfig) -> ClaimResult {
    let start = Instant::now();
    let mut result = ClaimResult {
        id: claim.id,
        statement: claim.statement,
        pass: true,
        checks: 0,
        substitutions: BigUint::default(),
        elapsed: Duration::ZERO,
        failure: None,
    };
    for check in claim.checks {
        let outcomes = run_check(check, cfg).unwrap_or_else(|e| {
            vec![CheckOutcome {
                pass: false,
                substitutions: BigUint::default(),
                detail: format!("{:?}: error: {}", check, e),
            }]
        });
        for o in outcomes {
            result.checks += 1;
            result.substitutions += o.substitutions;
            if !o.pass && result.failure.is_none() {
                result.pass = false;
                result.failure = Some(o.detail);
            }
        }
    }
    result.elapsed = start.elapsed();
    result
}

fn expect_report(what: String, rep: &IdentityReport, expect: Expect) -> CheckOutcome {
    let pass = match expect {
        Holds => rep.verdict == Verdict::Holds,
        Fails => rep.verdict == Verdict::Fails,
    };
    CheckOutcome {
        pass,
        substitutions: rep.substitutions_checked.clone(),
        detail: format!(
            "{}: expected {:?}, got {}",
            what,
            expect,
            rep.machine_line()
        ),
    }
}

fn semigroup(spec: &str) -> Result<workbench::FiniteSemigroup> {
    Ok(parse_spec(spec)?.semigroup())
}

fn square(w: &Word) -> (Term, Term) {
    (Term::Word(w.clone()), Term::Word(w.concat(w)))
}

fn run_check(check: &Check, cfg: &CheckConfig) -> Result<Vec<CheckOutcome>> {
    match *check {
        Identity {
            algebra,
            lhs,
            rhs,
            expect,
        } => {
            let (l, r) = (parse_term(lhs)?, parse_term(rhs)?);
            let mut built = parse_spec(algebra)?;
            if l.flavor() == Flavor::Semiring || r.flavor() == Flavor::Semiring {
                built = built.with_addition()?;
            }
            let rep = check_identity(built.as_algebra(), &l, &r, &Mode::Exhaustive, cfg)?;
            let mut out = expect_report(
                format!("{} on {}", identity_text(lhs, rhs), algebra),
                &rep,
                expect,
            );
            if let Some(c) = &rep.counterexample {
                out.pass &= confirm_counterexample(built.as_algebra(), &l, &r, c)?;
            }
            Ok(vec![out])
        }
        Square {
            algebra,
            word,
            expect,
        } => {
            let s = semigroup(algebra)?;
            let (l, r) = square(&word.build()?);
            let rep = check_identity(&s, &l, &r, &Mode::Exhaustive, cfg)?;
            Ok(vec![expect_report(
                format!("{:?} on {}", word, algebra),
                &rep,
                expect,
            )])
        }
        ImageSquare {
            algebra,
            n,
            m,
            h,
            expect,
        } => {
            let s = semigroup(algebra)?;
            let rep = check_idempotent_image(&s, &build_v_composed(n, m, h)?, cfg)?;
            Ok(vec![expect_report(
                format!("v_{{{},{}}}^({}) on {}", n, m, h, algebra),
                &rep,
                expect,
            )])
        }
        USweep {
            groups,
            max_index,
            max_vars,
        } => {
            let mut out = Vec::new();
            for g in groups {
                let m = parse_spec(&format!("group:{}", g))?;
                let m = workbench::structure::group_exponent(&m.semigroup())? as usize;
                for i in 1..=max_index {
                    let algebra = format!("brandt:{}:{}", g, i);
                    let s = semigroup(&algebra)?;
                    for total in 1..=max_vars {
                        for n in 0..=total {
                            let word = Family::U { n, k: total - n, m };
                            let (l, r) = square(&word.build()?);
                            let rep = check_identity(&s, &l, &r, &Mode::Exhaustive, cfg)?;
                            out.push(expect_report(
                                format!("{:?} on {}", word, algebra),
                                &rep,
                                Holds,
                            ));
                        }
                    }
                }
            }
            Ok(out)
        }
        FirstIdeal { algebra, n, m } => {
            let s = semigroup(algebra)?;
            let series = principal_series(&s);
            let mut subset: BTreeSet<usize> = s.idempotents().into_iter().collect();
            subset.extend(series.chain.get(1).into_iter().flatten().copied());
            let sub = s.restrict_to(&subset.into_iter().collect::<Vec<_>>())?;
            let (l, r) = square(&build_v(n, m, 1)?);
            let rep = check_identity(&sub, &l, &r, &Mode::Exhaustive, cfg)?;
            Ok(vec![expect_report(
                format!(
                    "v_{{{},{}}}^(1) on E(S) with the first ideal of {}",
                    n, m, algebra
                ),
                &rep,
                Holds,
            )])
        }
        Containment {
            algebra,
            n,
            m,
            within,
        } => {
            let s = semigroup(algebra)?;
            let allowed: BTreeSet<String> = {
                let t = semigroup(within)?;
                (0..t.size()).map(|a| t.label(a)).collect()
            };
            let image = image_set(&s, &ComposedWord::Leaf(build_v(n, m, 1)?), cfg)?;
            let outside: Vec<String> = image
                .elements()
                .into_iter()
                .map(|e| s.label(e))
                .filter(|l| !allowed.contains(l))
                .collect();
            let vars = 2 * n as u32;
            Ok(vec![CheckOutcome {
                pass: outside.is_empty(),
                substitutions: BigUint::from(s.size()).pow(vars),
                detail: format!("values outside {}: {:?}", within, outside),
            }])
        }
        KadourekWitness { n, h, m } => kadourek_witness(n, h, m, cfg).map(|o| vec![o]),
        NatFormula { algebra } => {
            let s = semigroup(algebra)?;
            let p = aperiodicity_index(&s)
                .ok_or_else(|| Error::BadSpec(format!("{} is not aperiodic", algebra)))?;
            let inf = inf_table(&natural_order(&s)?)?;
            let n = s.size();
            let mut bad = None;
            for x in 0..n {
                for y in 0..n {
                    if bad.is_none() && nat_sum_formula(&s, p, x, y)? != inf[x * n + y] {
                        bad = Some((x, y));
                    }
                }
            }
            Ok(vec![CheckOutcome {
                pass: bad.is_none(),
                substitutions: BigUint::from(n * n),
                detail: format!("formula differs from infimum on {} at {:?}", algebra, bad),
            }])
        }
        Hadamard { t } => {
            let r = rook_closure(t)?;
            let n = r.semigroup.size();
            let inf = inf_table(&natural_order(&r.semigroup)?)?;
            let bad = (0..n * n).find(|&i| {
                let (x, y) = (i / n, i % n);
                r.index_of(&r.elements[x].hadamard(&r.elements[y])) != Some(inf[i])
            });
            Ok(vec![CheckOutcome {
                pass: bad.is_none(),
                substitutions: BigUint::from(n * n),
                detail: format!(
                    "infimum differs from entrywise product on rook:{} at {:?}",
                    t, bad
                ),
            }])
        }
        Classify { algebra, summary } => {
            let got = classify_hm(&semigroup(algebra)?).summary();
            Ok(vec![CheckOutcome {
                pass: got == summary,
                substitutions: BigUint::default(),
                detail: format!("{}: expected {}, got {}", algebra, summary, got),
            }])
        }
    }
}

fn identity_text(lhs: &str, rhs: &str) -> String {
    format!("{} = {}", lhs, rhs)
}

fn kadourek_witness(n: usize, h: usize, m: usize, cfg: &CheckConfig) -> Result<CheckOutcome> {
    let closure = kadourek_semigroup(n, h)?;
    let gens: BTreeMap<VariableId, PartialInjection> =
        kadourek_generators(n, h)?.into_iter().collect();
    let (phi, _) = phi_psi(n, h)?;
    let v = build_v(n, m, h)?;
    let mut tau = BTreeMap::new();
    for a in v.variables() {
        let lit = &phi[&a];
        let g = &gens[&lit.var];
        let e = if lit.inverse { g.clone() } else { g.invert() };
        let idx = closure
            .index_of(&e)
            .ok_or_else(|| Error::BadSpec("generator missing from closure".into()))?;
        tau.insert(a, idx);
    }
    let (l, r) = square(&v);
    let rep = check_identity(
        &closure.semigroup,
        &l,
        &r,
        &Mode::Candidates(vec![tau]),
        cfg,
    )?;
    let end = (2 * n).pow(h as u32);
    let want = PartialInjection::from_pairs(end + 1, &[(end, 0)])?;
    let pass = match &rep.counterexample {
        Some(c) => {
            confirm_counterexample(&closure.semigroup, &l, &r, c)?
                && closure.elements[c.lhs] == want
                && closure.elements[c.rhs].is_empty()
        }
        None => false,
    };
    Ok(CheckOutcome {
        pass,
        substitutions: rep.substitutions_checked.clone(),
        detail: format!(
            "v_{{{},{}}}^({}) on kadourek:{}:{}: {}",
            n,
            m,
            h,
            n,
            h,
            rep.machine_line()
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique() {
        let ids: BTreeSet<&str> = REGISTRY.iter().map(|c| c.id).collect();
        assert_eq!(ids.len(), REGISTRY.len());
        assert_eq!(select(None).unwrap().len(), REGISTRY.len());
    }

    #[test]
    fn glob_filter() {
        let ids: Vec<&str> = select(Some("prop2.6*"))
            .unwrap()
            .iter()
            .map(|c| c.id)
            .collect();
        assert_eq!(ids, vec!["prop2.6.1", "prop2.6.2"]);
        assert_eq!(select(Some("lemma4.1")).unwrap().len(), 1);
        assert!(select(Some("nothing*")).unwrap().is_empty());
    }

    #[test]
    fn quick_claims_pass() {
        let cfg = CheckConfig::from_env();
        for id in [
            "lemma4.1",
            "remark1.3",
            "remark4.3",
            "prop3.3",
            "cor3.2",
            "prop2.6.1",
        ] {
            let claim = REGISTRY.iter().find(|c| c.id == id).unwrap();
            let r = run_claim(claim, &cfg);
            assert!(r.pass, "{}: {:?}", id, r.failure);
        }
    }
}
