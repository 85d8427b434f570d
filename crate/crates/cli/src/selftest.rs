//! The bundled corpus with its expected values, plus a seeded random sample.

use serde_json::{json, Value};

use polytorsion::fox::one_relator_polytope;
use polytorsion::invariants::rational;
use polytorsion::laurent::{laplace_identity_check, random_acyclic};
use polytorsion::{
    duality_check, l2_torsion_polytope, thurston_data, torsion, universal_torsion_commutative,
    Covector, LaurentPoly, Presentation, TorsionClass,
};

/// Corpus entry: name, file text, Alexander polynomial coefficients from `t^0`,
/// and the expected `x` on the generator of `H^1`.
const KNOTS: &[(&str, &str, &[i64], i64)] = &[
    ("trefoil", include_str!("../../../corpus/trefoil.pres"), &[1, -1, 1], 1),
    ("trefoil_torus", include_str!("../../../corpus/trefoil_torus.pres"), &[1, -1, 1], 1),
    ("trefoil_wirtinger", include_str!("../../../corpus/trefoil_wirtinger.pres"), &[1, -1, 1], 1),
    ("figure_eight", include_str!("../../../corpus/figure_eight.pres"), &[1, -3, 1], 1),
    (
        "figure_eight_wirtinger",
        include_str!("../../../corpus/figure_eight_wirtinger.pres"),
        &[1, -3, 1],
        1,
    ),
    ("torus_2_5", include_str!("../../../corpus/torus_2_5.pres"), &[1, -1, 1, -1, 1], 3),
    (
        "torus_2_5_wirtinger",
        include_str!("../../../corpus/torus_2_5_wirtinger.pres"),
        &[1, -1, 1, -1, 1],
        3,
    ),
];

const TORUS: &str = include_str!("../../../corpus/torus.pres");
const CIRCLE: &str = include_str!("../../../corpus/circle.pres");

const RANDOM_SAMPLES: u64 = 20;

pub struct Row {
    case: String,
    check: &'static str,
    passed: bool,
}

pub struct Report {
    seed: u64,
    rows: Vec<Row>,
}

impl Report {
    fn push(&mut self, case: &str, check: &'static str, passed: bool) {
        self.rows.push(Row {
            case: case.to_string(),
            check,
            passed,
        });
    }

    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }

    pub fn to_table(&self) -> String {
        let mut out = format!("polytorsion selftest, seed {}\n", self.seed);
        out.push_str(&format!("{:<26}{:<12}{}\n", "case", "check", "result"));
        for r in &self.rows {
            let verdict = if r.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{:<26}{:<12}{}\n", r.case, r.check, verdict));
        }
        let passed = self.rows.iter().filter(|r| r.passed).count();
        out.push_str(&format!("{passed} of {} checks passed\n", self.rows.len()));
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "checks": self.rows.iter().map(|r| json!({
                "case": r.case,
                "check": r.check,
                "passed": r.passed,
            })).collect::<Vec<_>>(),
            "passed": self.all_passed(),
            "seed": self.seed,
        })
    }
}

fn t_minus_1() -> LaurentPoly {
    LaurentPoly::univariate(0, &[-1, 1])
}

pub fn run(seed: u64) -> Report {
    let mut report = Report {
        seed,
        rows: Vec::new(),
    };
    for &(name, text, alexander, x) in KNOTS {
        let Ok(p) = Presentation::parse(text) else {
            report.push(name, "parse", false);
            continue;
        };
        let want = TorsionClass::new(t_minus_1(), LaurentPoly::univariate(0, alexander)).ok();
        let rho = universal_torsion_commutative(&p).ok();
        report.push(name, "torsion", rho.is_some() && rho == want);
        let norm = thurston_data(&p)
            .and_then(|d| d.seminorm(&Covector(vec![1])))
            .map(|v| v == rational(x, 1));
        report.push(name, "norm", norm.unwrap_or(false));
        let dual = duality_check(&p).map(|d| d.applicable && d.holds);
        report.push(name, "duality", dual.unwrap_or(false));
        if p.generator_count() == 2 && p.relators().len() == 1 {
            let agree = match (one_relator_polytope(&p), l2_torsion_polytope(&p)) {
                (Ok(a), Ok(b)) => a == b,
                _ => false,
            };
            report.push(name, "pipeline", agree);
        }
    }

    let torus = Presentation::parse(TORUS).ok();
    let trivial = torus
        .as_ref()
        .and_then(|p| universal_torsion_commutative(p).ok())
        .is_some_and(|t| t.is_trivial());
    report.push("torus", "torsion", trivial);
    let zero = torus
        .as_ref()
        .and_then(|p| l2_torsion_polytope(p).ok())
        .is_some_and(|c| c.is_zero());
    report.push("torus", "polytope", zero);

    let circle = Presentation::parse(CIRCLE)
        .ok()
        .and_then(|p| universal_torsion_commutative(&p).ok());
    let want = TorsionClass::of(t_minus_1()).ok();
    report.push("circle", "torsion", circle.is_some() && circle == want);

    let mut bookkeeping = true;
    let mut laplace = true;
    for k in 0..RANDOM_SAMPLES {
        let r = random_acyclic(1, seed.wrapping_add(k));
        bookkeeping &= torsion(&r.complex).is_ok_and(|t| t == r.expected);
        laplace &= laplace_identity_check(&r.complex).unwrap_or(false);
    }
    let case = format!("random x{RANDOM_SAMPLES}");
    report.push(&case, "torsion", bookkeeping);
    report.push(&case, "laplace", laplace);
    report
}
