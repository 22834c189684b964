//! Acceptance gate: one test per criterion, in criterion order.
//!
//! Every test asserts its pinned tolerances and then prints a single
//! `[PASS] criterion N` line carrying the measured numbers (visible with
//! `--nocapture`); the libtest ok/FAILED status is the machine-readable
//! verdict. Expensive artifacts (prime tables, central values) are cached
//! under `CARGO_TARGET_TMPDIR` so reruns are cheap.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cubic_lmoment::cache::JsonlStore;
use cubic_lmoment::eisenstein::{gcd, primary_associate, EisensteinInt, PrimaryElement};
use cubic_lmoment::family::{enumerate_family, family_size_constants, DEFAULT_ZETA_SQ_DERIVATIVE};
use cubic_lmoment::gauss::{gauss_direct, GaussContext};
use cubic_lmoment::lfunction::{central_value, central_values_cached, grh_consistent};
use cubic_lmoment::mollifier::{
    in_t0_bound, mollifier_m, mollifier_m_expansion, nu_n_prime_power, truncated_exp,
    MollifierConfig, UpperBoundParams,
};
use cubic_lmoment::moments::{
    afe_term_split, d_constant_check, euler_constant_c0, euler_constant_c1, euler_constant_cx,
    first_mollified_moment, reproduce_paper_constants, upper_bound_rates, RECOVERED_THETA,
};
use cubic_lmoment::primes::{ideal_count, li, primary_elements_norm_le, PrimeTable};
use cubic_lmoment::symbol::{cubic_symbol, cubic_symbol_prime, CubicSymbol};

fn cache_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR"))
}

fn shared_store() -> JsonlStore {
    JsonlStore::new(cache_dir())
}

#[test]
fn acceptance_criterion_1_paper_constants() {
    let t = Instant::now();
    let c = reproduce_paper_constants();

    // R₁ and R₂ from the rate formula; the printed Θ is truncated to the
    // digits shown, so R₁ is compared through that truncation and again,
    // digit-exact, at the recovered full-precision Θ.
    assert!(
        (c.r1 - (-4.7107876828e40)).abs() <= 2.6e31,
        "R1 = {}",
        c.r1
    );
    assert_eq!((c.r2 / 1e32).round() as i64, 28043085602, "R2 = {}", c.r2);
    let p = UpperBoundParams::paper();
    let (r1_exact, r2_exact) = upper_bound_rates(p.k, p.kappa, p.a, p.beta, RECOVERED_THETA);
    assert_eq!((r1_exact / 1e30).round() as i64, -47107876828);
    assert_eq!((r2_exact / 1e32).round() as i64, 28043085602);

    assert_eq!((c.s_k / 10.0).round() as i64, 53316663123, "S_2 = {}", c.s_k);
    assert!(
        (c.loglog_bound - 101.248586291).abs() <= 1e-6,
        "loglog chain = {}",
        c.loglog_bound
    );
    let prefactor = 3.0 / (3f64.sqrt() - 1.0).powi(2);
    assert_eq!(c.proportion_prefactor, prefactor);
    assert_eq!(c.proportion_loglog_reciprocal, 101.3);
    assert!(t.elapsed().as_secs_f64() < 1.0, "budget is 1 s");

    println!(
        "[PASS] criterion 1: R1 = {:.10e}, R2 = {:.10e}, S_2 = {:.10e}, chain = {:.9} ({:.3?})",
        c.r1,
        c.r2,
        c.s_k,
        c.loglog_bound,
        t.elapsed()
    );
}

#[test]
fn acceptance_criterion_2_gauss_sums() {
    let t = Instant::now();
    let table = PrimeTable::sieve(10_000).unwrap();
    let ctx = GaussContext::new(&table);
    let mut rng = ChaCha8Rng::seed_from_u64(0xace2);

    // Fast multiplicative evaluation against literal residue summation for
    // every primary modulus of norm up to 2000, twenty shifts each.
    let mut checked = 0u64;
    let mut worst = 0.0f64;
    for (_, z) in primary_elements_norm_le(2000).unwrap() {
        let n = PrimaryElement::from_primary(z).unwrap();
        for _ in 0..20 {
            let r = loop {
                let a = rng.gen_range(-60i128..=60);
                let b = rng.gen_range(-60i128..=60);
                if a != 0 || b != 0 {
                    break EisensteinInt::new(a, b);
                }
            };
            let fast = ctx.fast(&r, &n).unwrap();
            let direct = gauss_direct(&r, &n).unwrap();
            let err = (fast.value - direct.value).norm() / direct.value.norm().max(1.0);
            assert!(
                err <= 1e-9,
                "g({} + {}w, {} + {}w): error {err}",
                r.a(),
                r.b(),
                n.value().a(),
                n.value().b()
            );
            worst = worst.max(err);
            checked += 1;
        }
    }

    // |g(1, pi)|^2 = N(pi) at every sieved prime.
    let mut primes_checked = 0u64;
    for p in table.primes() {
        let g = ctx.fast(&EisensteinInt::ONE, &p.element()).unwrap();
        let rel = (g.value.norm_sqr() - p.norm() as f64).abs() / p.norm() as f64;
        assert!(rel <= 1e-9, "|g(1, pi)|^2 at N = {}: {rel}", p.norm());
        primes_checked += 1;
    }
    assert!(t.elapsed().as_secs() < 120, "budget is 2 min");

    println!(
        "[PASS] criterion 2: {checked} fast/direct pairs (worst {worst:.2e}), |g|^2 = N at {primes_checked} primes ({:.3?})",
        t.elapsed()
    );
}

#[test]
fn acceptance_criterion_3_cubic_reciprocity() {
    let t = Instant::now();
    let table = PrimeTable::sieve(10_000).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0xace3);

    let random_primary = |rng: &mut ChaCha8Rng| loop {
        let a = rng.gen_range(-55i128..=55);
        let b = rng.gen_range(-55i128..=55);
        let z = EisensteinInt::new(a, b);
        let n = z.norm().unwrap();
        if n > 1 && n % 3 != 0 {
            break primary_associate(&z).unwrap();
        }
    };

    // Reciprocity symbol(m, n) = symbol(n, m) on random coprime primary
    // pairs, exact equality in the symbol monoid.
    let mut pairs = 0u32;
    while pairs < 500 {
        let m = random_primary(&mut rng);
        let n = random_primary(&mut rng);
        if gcd(&m.value(), &n.value()).unwrap() != EisensteinInt::ONE {
            continue;
        }
        let lhs = cubic_symbol(&m.value(), &n).unwrap();
        let rhs = cubic_symbol(&n.value(), &m).unwrap();
        assert_eq!(
            lhs,
            rhs,
            "reciprocity broke at m = {} + {}w, n = {} + {}w",
            m.value().a(),
            m.value().b(),
            n.value().a(),
            n.value().b()
        );
        pairs += 1;
    }

    // The reciprocity-based general symbol against an oracle that factors n
    // and multiplies Euler-criterion prime symbols.
    let mut oracle_checks = 0u64;
    for (norm, z) in primary_elements_norm_le(10_000).unwrap() {
        if norm == 1 {
            continue;
        }
        let n = PrimaryElement::from_primary(z).unwrap();
        let factorization = table.factor(&n).unwrap();
        let alphas = [
            EisensteinInt::new(2, 0),
            EisensteinInt::new(-1, 3),
            EisensteinInt::new(rng.gen_range(-40i128..=40), rng.gen_range(-40i128..=40)),
        ];
        for alpha in alphas {
            let mut want = CubicSymbol::Root(0);
            for (p, e) in factorization.factors() {
                let s = cubic_symbol_prime(&alpha, &p.element()).unwrap();
                for _ in 0..*e {
                    want = want.mul(s);
                }
            }
            let got = cubic_symbol(&alpha, &n).unwrap();
            assert_eq!(
                got,
                want,
                "oracle mismatch at alpha = {} + {}w, n = {} + {}w",
                alpha.a(),
                alpha.b(),
                n.value().a(),
                n.value().b()
            );
            oracle_checks += 1;
        }
    }
    assert!(t.elapsed().as_secs() < 60, "budget is 1 min");

    println!(
        "[PASS] criterion 3: 500 reciprocity pairs exact, {oracle_checks} Euler-oracle checks ({:.3?})",
        t.elapsed()
    );
}

#[test]
fn acceptance_criterion_4_afe_consistency() {
    let t = Instant::now();
    let table = PrimeTable::sieve(10_000).unwrap();
    let ctx = GaussContext::new(&table);
    let family = enumerate_family(10_000, &table).unwrap();
    let step = (family.len() / 50).max(1);
    let sampled: Vec<_> = family.iter().step_by(step).take(50).collect();
    assert_eq!(sampled.len(), 50);

    let mut worst_shift = 0.0f64;
    let mut worst_conj = 0.0f64;
    for elem in sampled {
        let values: Vec<_> = [0.5, 1.0, 2.0]
            .iter()
            .map(|&y| central_value(elem, y, 1e-8, &ctx).unwrap().value)
            .collect();
        let scale = values.iter().map(|v| v.norm()).fold(1.0f64, f64::max);
        for i in 0..values.len() {
            for j in (i + 1)..values.len() {
                let diff = (values[i] - values[j]).norm() / scale;
                assert!(
                    diff <= 1e-6,
                    "Y-shift drift {diff} at conductor {}",
                    elem.conductor_norm()
                );
                worst_shift = worst_shift.max(diff);
            }
        }

        let conj = elem.conjugate().unwrap();
        let conj_value = central_value(&conj, 1.0, 1e-8, &ctx).unwrap().value;
        let diff = (conj_value - values[1].conj()).norm() / scale;
        assert!(
            diff <= 1e-6,
            "conjugate symmetry drift {diff} at conductor {}",
            elem.conductor_norm()
        );
        worst_conj = worst_conj.max(diff);
    }
    assert!(t.elapsed().as_secs() < 300, "budget is 5 min");

    println!(
        "[PASS] criterion 4: 50 members, worst Y-shift {worst_shift:.2e}, worst conjugate {worst_conj:.2e} ({:.3?})",
        t.elapsed()
    );
}

#[test]
fn acceptance_criterion_5_family_enumeration() {
    let t = Instant::now();
    let table = PrimeTable::sieve(2000).unwrap();

    // Independent squarefree check: no sieved prime square divides z.
    let squarefree = |z: &EisensteinInt| -> bool {
        let n = z.norm().unwrap();
        for p in table.primes() {
            if p.norm() * p.norm() > n {
                break;
            }
            let square = p.element().value().mul(&p.element().value()).unwrap();
            if square.div_exact(z).unwrap().is_some() {
                return false;
            }
        }
        true
    };

    // Brute-force double loop over coprime squarefree primary pairs with the
    // mod-9 congruence checked directly on the coordinates of c = c2*c1^2.
    let primaries = primary_elements_norm_le(2000).unwrap();
    let mut brute: Vec<(i128, (i128, i128, i128, i128))> = Vec::new();
    for (n1, z1) in &primaries {
        if !squarefree(z1) {
            continue;
        }
        for (n2, z2) in &primaries {
            if n1 * n2 > 2000 || !squarefree(z2) {
                continue;
            }
            if gcd(z1, z2).unwrap() != EisensteinInt::ONE {
                continue;
            }
            let c = z2.mul(z1).unwrap().mul(z1).unwrap();
            if c.a().rem_euclid(9) != 1 || c.b().rem_euclid(9) != 0 || c == EisensteinInt::ONE {
                continue;
            }
            brute.push((n1 * n2, (z1.a(), z1.b(), z2.a(), z2.b())));
        }
    }
    brute.sort_unstable();

    // enumerate_family(X) must equal the conductor-filtered brute set for
    // every bound X up to 2000.
    let mut want: BTreeSet<(i128, i128, i128, i128)> = BTreeSet::new();
    let mut next = 0usize;
    for x in 1..=2000i128 {
        while next < brute.len() && brute[next].0 <= x {
            want.insert(brute[next].1);
            next += 1;
        }
        let got: BTreeSet<_> = enumerate_family(x, &table)
            .unwrap()
            .iter()
            .map(|f| {
                (
                    f.c1().value().a(),
                    f.c1().value().b(),
                    f.c2().value().a(),
                    f.c2().value().b(),
                )
            })
            .collect();
        assert_eq!(got, want, "family mismatch at X = {x}");
    }
    let exact_size = want.len();

    // Size against the first-order asymptotic C1(1)*X*log X at X = 10^6.
    let dir = cache_dir();
    let big = PrimeTable::load_or_sieve(1_000_000, Some(&dir)).unwrap();
    let family = enumerate_family(1_000_000, &big).unwrap();
    let constants = family_size_constants(&PrimaryElement::ONE, 1e-4, &big).unwrap();
    let predicted = constants.c1 * 1e6 * 1e6f64.ln();
    let ratio = family.len() as f64 / predicted;
    let c2 = constants.c2(DEFAULT_ZETA_SQ_DERIVATIVE);
    let two_term = (constants.c1 * 1e6f64.ln() + c2) * 1e6;
    assert!(
        (0.8..=1.2).contains(&ratio),
        "|F(10^6)| = {}, predicted {predicted:.1}, ratio {ratio}; \
         the two-term count (C1*logX + C2)*X = {two_term:.0} (C2 = {c2:.6}) \
         matches to ratio {:.4}, so the shortfall is the C2*X term that the \
         one-term bracket excludes",
        family.len(),
        family.len() as f64 / two_term
    );
    assert!(t.elapsed().as_secs() < 180, "budget is 3 min");

    println!(
        "[PASS] criterion 5: exact match on X <= 2000 ({exact_size} members at 2000); |F(10^6)| = {} vs C1*X*logX = {predicted:.0}, ratio {ratio:.3} ({:.3?})",
        family.len(),
        t.elapsed()
    );
}

#[test]
fn acceptance_criterion_6_analytic_sanity() {
    let t = Instant::now();
    let dir = cache_dir();
    let table = PrimeTable::load_or_sieve(1_000_000, Some(&dir)).unwrap();

    // Prime ideal theorem at 10^6.
    let pi_k = table.pi_k(1e6).unwrap() as f64;
    let li6 = li(1e6).unwrap();
    let pnt_rel = (pi_k - li6).abs() / li6;
    assert!(pnt_rel < 0.002, "pi_K(10^6) = {pi_k}, li = {li6}");

    // Ideal-count density against the Dedekind zeta residue.
    let residue = std::f64::consts::PI / (3.0 * 3f64.sqrt());
    let density = ideal_count(1e6).unwrap() as f64 / 1e6;
    let density_rel = (density - residue).abs() / residue;
    assert!(density_rel < 0.01, "ideal density {density} vs {residue}");

    // Prime-sum lemma items (1) through (5) at the configured instances.
    let interval_sum = |lo: i128, hi: i128, f: &dyn Fn(f64) -> f64| -> f64 {
        table
            .primes()
            .iter()
            .map(|p| p.norm())
            .filter(|&n| n > lo && n <= hi)
            .map(|n| f(n as f64))
            .sum()
    };
    for k0 in [3i128, 16] {
        let partial = interval_sum(k0, table.limit(), &|n| n.powf(-1.5));
        let tail = 4.0 / (table.limit() as f64).sqrt();
        assert!(partial + tail < 1.0, "item 1 at k0 = {k0}");
    }
    let wide = MollifierConfig::desk_mode_wide(1_000_000).unwrap();
    let desk = MollifierConfig::desk_mode(10_000).unwrap();
    for cfg in [&wide, &desk] {
        for r in 0..=cfg.j_max() {
            let (lo, hi) = cfg.interval_bounds(r);
            for sigma in [1.5f64, 2.0] {
                let lhs = interval_sum(lo, hi, &|n| n.powf(-sigma));
                let rhs = 2.0 / ((sigma - 1.0) * (lo as f64).powf(sigma - 1.0));
                assert!(lhs < rhs, "item 2 at r = {r}, sigma = {sigma}");
            }
        }
        let (lo, hi) = cfg.interval_bounds(0);
        let lhs = interval_sum(lo, hi, &|n| 1.0 / n);
        assert!(
            lhs < 2.0 * (cfg.theta(0) * cfg.log_x()).ln(),
            "item 3: {lhs}"
        );
    }
    let mertens = interval_sum(wide.norm_cut(0), wide.norm_cut(wide.j_max()), &|n| 1.0 / n);
    let target = wide.j_max() as f64;
    let bound = 1.5 / (wide.theta(0) * wide.log_x());
    assert!(
        (mertens - target).abs() <= bound,
        "item 4: |{mertens} - {target}| vs {bound}"
    );
    for (cfg, top) in [(&wide, 1i64), (&desk, 0)] {
        for j in 0..=top {
            let lhs = interval_sum(cfg.k0(), cfg.norm_cut(j), &|n| n.ln().powi(2) / n);
            let rhs = 2.0 * (cfg.theta(j) * cfg.log_x()).powi(2);
            assert!(lhs < rhs, "item 5 at j = {j}");
        }
    }

    // Square-prime sum constant D across interval conventions.
    let report = d_constant_check(11_000);
    assert!(report.all_below_one, "max n*sum = {}", report.max_value);
    let quint = report
        .conventions
        .iter()
        .find(|c| c.name == "quintupling-from-8")
        .unwrap();
    assert_eq!(quint.values[0].0, 1);
    assert!(
        (quint.values[0].1 - 0.416533).abs() < 1e-6,
        "quintupling n = 1 gave {}",
        quint.values[0].1
    );
    let octaves = report
        .conventions
        .iter()
        .find(|c| c.name == "octaves-from-20")
        .unwrap();
    let n2 = octaves.values.iter().find(|v| v.0 == 2).unwrap();
    assert!((n2.1 - 0.353).abs() < 5e-4, "octaves n = 2 gave {}", n2.1);
    assert!(t.elapsed().as_secs() < 120, "budget is 2 min");

    println!(
        "[PASS] criterion 6: pi_K rel {pnt_rel:.2e}, density rel {density_rel:.2e}, lemma items 1-5 hold, D values {:.6}/{:.5} ({:.3?})",
        quint.values[0].1,
        n2.1,
        t.elapsed()
    );
}

#[test]
fn acceptance_criterion_7_mollifier_algebra() {
    let t = Instant::now();

    // Truncated-exponential inequalities on the stated grids. The gap
    // e^x - E_{2l}(x) is strictly positive for x < 0 but can sit below one
    // ulp; strictness is asserted only where the analytic gap floor
    // resolves, and x = 0 is exact equality.
    let factorial = |n: u32| (1..=n).fold(1.0f64, |acc, i| acc * i as f64);
    for ell in 1u32..=6 {
        let order = 2 * ell;
        let mut x = -10.0f64;
        while x < 0.0 {
            let e = truncated_exp(x, order);
            let gap_floor = x.exp() * (-x).powi(order as i32 + 1) / factorial(order + 1);
            if gap_floor > 1e-12 * e {
                assert!(x.exp() < e, "E_{order}({x})");
            } else {
                assert!(x.exp() <= e * (1.0 + 1e-14), "E_{order}({x})");
            }
            x += 0.25;
        }
        assert_eq!(truncated_exp(0.0, order), 1.0);
        let cap = 2.0 * ell as f64 / std::f64::consts::E.powi(2);
        let scale = 1.0 + (-(order as f64)).exp();
        let mut x = -10.0f64;
        while x <= cap {
            assert!(
                x.exp() < scale * truncated_exp(x, order),
                "scaled E_{order}({x})"
            );
            x += 0.25;
        }
    }

    // nu_n on prime powers is n^m/m!, checked exhaustively.
    for n in 1u32..=4 {
        for m in 0u32..=8 {
            let mut expected = 1.0f64;
            for i in 1..=m {
                expected *= n as f64 / i as f64;
            }
            let got = nu_n_prime_power(n, m);
            assert!(
                (got - expected).abs() <= 1e-12 * expected.max(1.0),
                "nu_{n}(p^{m}) = {got}, expected {expected}"
            );
        }
    }

    // Product form against the coefficient expansion on a synthetic
    // single-interval ladder holding exactly the two norm-7 primes.
    let table = PrimeTable::sieve(10_000).unwrap();
    let cfg = MollifierConfig::new(1.0, 1.0, 1.76354, 0.75, 0.3, 10_000).unwrap();
    assert_eq!(cfg.j_max(), 0);
    assert_eq!(cfg.k0(), 4);
    assert_eq!(cfg.norm_cut(0), 9);
    let in_interval = table
        .primes()
        .iter()
        .filter(|p| p.norm() > cfg.k0() && p.norm() <= cfg.norm_cut(0))
        .count();
    assert_eq!(in_interval, 2, "interval should hold the two norm-7 primes");

    let family = enumerate_family(2000, &table).unwrap();
    let step = (family.len() / 8).max(1);
    let mut expanded = 0u32;
    for elem in family.iter().step_by(step).take(8) {
        let product = mollifier_m(elem, &cfg, &table).unwrap();
        let expansion = mollifier_m_expansion(elem, &cfg, &table).unwrap();
        let err = (product - expansion).norm();
        assert!(
            err <= 1e-10 * (1.0 + product.norm()),
            "expansion error {err} at conductor {}",
            elem.conductor_norm()
        );
        expanded += 1;
    }
    assert_eq!(expanded, 8);

    // The full admissibility validator at the paper's parameter set.
    let checks = UpperBoundParams::paper().validate();
    assert_eq!(checks.len(), 10);
    for check in &checks {
        assert!(
            check.holds,
            "condition {} failed: lhs = {}, rhs = {}",
            check.name, check.lhs, check.rhs
        );
    }
    assert!(t.elapsed().as_secs() < 60, "budget is 1 min");

    println!(
        "[PASS] criterion 7: E_l grids, nu_n prime powers, {expanded} product/expansion members, {} validator conditions ({:.3?})",
        checks.len(),
        t.elapsed()
    );
}

#[test]
fn acceptance_criterion_8_grh_diagnostics() {
    let t = Instant::now();
    let table = PrimeTable::sieve(10_000).unwrap();
    let ctx = GaussContext::new(&table);
    let family = enumerate_family(10_000, &table).unwrap();
    let store = shared_store();
    let records = central_values_cached(&family, 10_000, 1.0, 1e-6, &ctx, Some(&store)).unwrap();

    // GRH-flavored pointwise bound at lambda = 1 over the whole family.
    for record in &records {
        for x in [100.0, 1000.0] {
            assert!(
                grh_consistent(record, x, 1.0, &ctx).unwrap(),
                "GRH bound violated at conductor {} with x = {x}",
                record.element.conductor_norm()
            );
        }
    }

    // Pointwise mollifier bound for sampled members that land in T0.
    let cfg = MollifierConfig::desk_mode(10_000).unwrap();
    let step = (records.len() / 12).max(1);
    let mut in_t0 = 0u32;
    let mut sampled = 0u32;
    for record in records.iter().step_by(step).take(12) {
        let report = in_t0_bound(
            &record.element,
            record.value.norm(),
            1.0299,
            &cfg,
            &table,
        )
        .unwrap();
        assert!(
            report.holds,
            "T0 bound failed at conductor {}: lhs = {}, rhs = {}",
            record.element.conductor_norm(),
            report.lhs,
            report.rhs
        );
        if report.in_t0 {
            in_t0 += 1;
        }
        sampled += 1;
    }
    assert!(t.elapsed().as_secs() < 600, "budget is 10 min");

    println!(
        "[PASS] criterion 8: {} members x 2 GRH bounds, T0 bound on {sampled} sampled ({in_t0} inside T0) ({:.3?})",
        records.len(),
        t.elapsed()
    );
}

#[test]
fn acceptance_criterion_9_moment_sandwich_and_structure() {
    let t = Instant::now();
    let dir = cache_dir();
    let table = PrimeTable::load_or_sieve(1_100_000, Some(&dir)).unwrap();
    let ctx = GaussContext::new(&table);
    let store = shared_store();
    let euler_tol = 1e-3;

    // Sandwich c0 < C_X < c1 at both desk scales.
    let c0 = euler_constant_c0(&table, euler_tol).unwrap();
    let c1 = euler_constant_c1(&table, euler_tol).unwrap();
    let mut cx_desk = Vec::new();
    for x in [10_000i128, 100_000] {
        let cfg = MollifierConfig::desk_mode(x).unwrap();
        let cx = euler_constant_cx(&cfg, &table, euler_tol).unwrap();
        assert!(
            c0 < cx && cx < c1,
            "sandwich failed at X = {x}: {c0} / {cx} / {c1}"
        );
        cx_desk.push(cx);
    }

    // First mollified moment at X = 10^4: essentially real, positive.
    let cfg4 = MollifierConfig::desk_mode(10_000).unwrap();
    let report = first_mollified_moment(&cfg4, 1.0, 1e-6, euler_tol, &ctx, Some(&store)).unwrap();
    let rel_imag = report.moment_value.im.abs() / report.moment_value.norm();
    assert!(
        report.moment_value.re > 0.0,
        "moment = {}",
        report.moment_value
    );
    assert!(rel_imag < 1e-6, "relative imaginary part {rel_imag}");

    // S1 dominates the oscillating terms at X = 10^4, twist 1.
    let split = afe_term_split(10_000, &PrimaryElement::ONE, &ctx).unwrap();
    assert!(
        split.s1 > split.s2.norm() && split.s1 > split.s3.norm(),
        "S1 = {}, |S2| = {}, |S3| = {}",
        split.s1,
        split.s2.norm(),
        split.s3.norm()
    );
    assert!(t.elapsed().as_secs() < 900, "budget is 15 min");

    println!(
        "[PASS] criterion 9: c0 {c0:.6} < C_X {:.6}/{:.6} < c1 {c1:.6}; moment {:.3} (rel imag {rel_imag:.2e}); S1 {:.2} > |S2| {:.2}, |S3| {:.2} ({:.3?})",
        cx_desk[0],
        cx_desk[1],
        report.moment_value.re,
        split.s1,
        split.s2.norm(),
        split.s3.norm(),
        t.elapsed()
    );
}

/// Module example rather than a numbered criterion: the mollified moment at
/// X = 10^5 lands within the wide bracket [0.2, 5] of C_X*X*log X.
#[test]
fn module_example_moment_ratio_bracket_at_100k() {
    let t = Instant::now();
    let dir = cache_dir();
    let table = PrimeTable::load_or_sieve(1_100_000, Some(&dir)).unwrap();
    let ctx = GaussContext::new(&table);
    let store = shared_store();

    let cfg = MollifierConfig::desk_mode(100_000).unwrap();
    let report = first_mollified_moment(&cfg, 1.0, 1e-6, 1e-2, &ctx, Some(&store)).unwrap();
    assert!(
        (0.2..=5.0).contains(&report.moment_ratio),
        "ratio {} with moment {} against main term {}",
        report.moment_ratio,
        report.moment_value,
        report.main_term_prediction
    );

    println!(
        "[PASS] module example: moment ratio {:.3} at X = 10^5 over {} members ({:.3?})",
        report.moment_ratio,
        report.family_size,
        t.elapsed()
    );
}
