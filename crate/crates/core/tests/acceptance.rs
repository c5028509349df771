//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Every check is exact; the only tolerances are the wall-clock budgets and
//! random-instance counts pinned below. Random instances come from a seeded
//! ChaCha generator, so runs are reproducible.
//!
//! A criterion whose literal input is inconsistent is still run as stated
//! and printed as FAIL; it is listed in `KNOWN_UNATTAINABLE` with the
//! reason, and only failures outside that list make the process exit
//! non-zero.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::oracle::find_triangular_diagonal;
use common::*;
use polyqt::algebra::{FieldSpec, MobiusMatrix, Poly};
use polyqt::combinat::{homogeneous_partition, homogenize_vector, majorizes, replay, stack_factors};
use polyqt::matpoly::{ConstMatrix, MatPoly};
use polyqt::quasitri::{equalize_with_transforms, realize_strictly_regular, realize_with_infinity};
use polyqt::smith::{
    extract_spectral_data, infinite_pm, invariant_polynomials, partial_multiplicities, smith_form, Eigen,
    SpectralData,
};
use polyqt::transfer::{drive_diagonal, factor_counts, permute_diagonal, CoprimePartition};
use polyqt::triangcheck::{check_sufficient, check_two_degree, Verdict};
use polyqt::Error;

const SEED: u64 = 0x5EED_2026;
const BUDGET_GOLDEN: Duration = Duration::from_secs(10);
const BUDGET_MOBIUS: Duration = Duration::from_secs(60);
const BUDGET_TRIANG: Duration = Duration::from_secs(60);
const MOBIUS_CASES: usize = 200;
const SMITH_CASES: usize = 500;
const PARTITION_CASES: usize = 1000;
const HOMOGENIZE_CASES: usize = 1000;
const SHARP_CASES: usize = 12;
const BRUTE_CASES: usize = 150;
const EQUALIZE_CASES: usize = 200;
/// Target failure rate for equalization at desk scale.
const EQUALIZE_MAX_FAILURE_RATE: f64 = 0.0;

/// Criteria whose literal statement cannot hold, with the reason.
const KNOWN_UNATTAINABLE: &[(usize, &str)] = &[(
    8,
    "f1=(0,0,0,0,2,5,5,5) sums to 17 but the d=7, n=8 instance needs 18 degree-1 factors \
     (index sum 7*8 = 56 = 2*19 + 18); those vectors belong to the d=10 three-degree instance",
)];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// Run a check, turning errors and panics into failures.
fn run(f: impl FnOnce() -> Result<Outcome, String> + std::panic::UnwindSafe) -> (Outcome, Duration) {
    let start = Instant::now();
    let r = match std::panic::catch_unwind(f) {
        Ok(Ok(o)) => o,
        Ok(Err(e)) => outcome(false, e),
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            outcome(false, format!("panic: {msg}"))
        }
    };
    (r, start.elapsed())
}

fn e2s(e: Error) -> String {
    format!("{}: {e}", e.code())
}

fn example_data() -> SpectralData {
    SpectralData::from_invariants(gf2(), 6, 10, &example_invariants(), None, &[], 0).unwrap()
}

fn smith_of_example() -> Vec<Poly> {
    let mut s = vec![Poly::one(gf2())];
    s.extend(example_invariants());
    s
}

fn criterion_1() -> Result<Outcome, String> {
    let start = Instant::now();
    let r = realize_strictly_regular(&example_data(), 10, 6).map_err(e2s)?;
    let elapsed = start.elapsed();
    let smith_ok = invariant_polynomials(&r.q) == smith_of_example();
    let ok = r.q.rows() == 6
        && r.q.is_strictly_regular()
        && r.q.degree() == Some(10)
        && r.blocks.max_size() <= 4
        && r.q.is_block_upper_triangular(&r.blocks.sizes)
        && r.certificate.offdiag_below
        && smith_ok
        && elapsed < BUDGET_GOLDEN;
    Ok(outcome(
        ok,
        format!(
            "blocks {:?}, degree {:?}, strictly regular {}, Smith form equal {}, off-diagonal < 10 {}, {:.2?}",
            r.blocks.sizes,
            r.q.degree(),
            r.q.is_strictly_regular(),
            smith_ok,
            r.certificate.offdiag_below,
            elapsed
        ),
    ))
}

fn reversal_blocks() -> ConstMatrix {
    let mut rows = vec![vec![0i64; 6]; 6];
    for b in 0..3 {
        rows[2 * b][2 * b + 1] = 1;
        rows[2 * b + 1][2 * b] = 1;
    }
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    ConstMatrix::from_ints(gf2(), &refs)
}

fn criterion_2() -> Result<Outcome, String> {
    let q = example_q();
    let lead = q.coefficient(10);
    let lead_ok = lead == reversal_blocks() && lead.is_nonsingular();
    let smith_ok = invariant_polynomials(&q) == smith_of_example();
    // S has degree 22, so it has no grade-10 view as a matrix; compare with
    // the complete spectral data of S's invariant polynomials at grade 10.
    let data = extract_spectral_data(&q, &[], 0).map_err(e2s)?;
    let equiv = data.same_structure(&example_data());
    let ok = q.degree() == Some(10) && q.is_strictly_regular() && lead_ok && smith_ok && equiv;
    Ok(outcome(
        ok,
        format!(
            "degree {:?}, leading coefficient diag(R,R,R) {lead_ok}, Smith form equal {smith_ok}, \
             spectral data equal to S's at grade 10 {equiv}",
            q.degree()
        ),
    ))
}

fn infinite_example_data() -> SpectralData {
    let mut finite = BTreeMap::new();
    finite.insert(eta(), vec![0, 0, 1, 2, 3, 3]);
    finite.insert(phi(), vec![0, 1, 1, 1, 1, 3]);
    SpectralData {
        field: gf2(),
        n: 6,
        grade: 10,
        finite,
        infinite: vec![0, 1, 1, 2, 2, 4],
        invariants: None,
    }
}

fn criterion_3() -> Result<Outcome, String> {
    let want = infinite_example_data();
    let r = realize_with_infinity(&want, 10, 6).map_err(e2s)?;
    let got = extract_spectral_data(&r.q, &[], 0).map_err(e2s)?;
    let realized_ok = r.q.grade() == 10 && r.q.degree() == Some(10) && got.same_structure(&want);
    // The reversal of the running witness is the fixture with this data.
    let qt = example_q().reverse();
    let fixture = extract_spectral_data(&qt, &[], 0).map_err(e2s)?;
    let fixture_ok = qt.degree() == Some(10)
        && qt.coefficient(10).rank() == 1
        && infinite_pm(&qt).map_err(e2s)? == want.infinite
        && fixture.same_structure(&want);
    Ok(outcome(
        realized_ok && fixture_ok,
        format!(
            "realized grade {} degree {:?} data equal {}; fixture degree 10, rank-1 leading coefficient, data equal {}",
            r.q.grade(),
            r.q.degree(),
            got.same_structure(&want),
            fixture_ok
        ),
    ))
}

fn random_poly(rng: &mut ChaCha8Rng, f: FieldSpec, max_deg: usize) -> Poly {
    let p = f.characteristic();
    let len = rng.gen_range(0..=max_deg + 1);
    let c: Vec<i64> = (0..len).map(|_| rng.gen_range(0..p) as i64).collect();
    Poly::from_ints(f, &c)
}

/// A polynomial of degree exactly `deg`.
fn random_poly_of_degree(rng: &mut ChaCha8Rng, f: FieldSpec, deg: usize) -> Poly {
    let p = f.characteristic();
    let mut c: Vec<i64> = (0..deg).map(|_| rng.gen_range(0..p) as i64).collect();
    c.push(rng.gen_range(1..p) as i64);
    Poly::from_ints(f, &c)
}

fn random_matpoly(rng: &mut ChaCha8Rng, f: FieldSpec, rows: usize, cols: usize, max_deg: usize) -> MatPoly {
    let entries = (0..rows * cols).map(|_| random_poly(rng, f, max_deg)).collect();
    MatPoly::from_entries(f, rows, cols, entries)
}

fn random_field(rng: &mut ChaCha8Rng) -> FieldSpec {
    FieldSpec::prime([2, 3, 5][rng.gen_range(0..3)]).unwrap()
}

fn criterion_4() -> Result<Outcome, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 4);
    let start = Instant::now();
    let (mut cases, mut checks, mut bad) = (0, 0, 0);
    while cases < MOBIUS_CASES {
        let f = random_field(&mut rng);
        let n = rng.gen_range(1..=4);
        let grade = rng.gen_range(0..=4);
        let p = random_matpoly(&mut rng, f, n, n, grade).with_grade(grade).map_err(e2s)?;
        if !p.is_regular() {
            continue;
        }
        let q = f.characteristic() as i64;
        let a = [0; 4].map(|_| rng.gen_range(0..q));
        let Ok(mob) = MobiusMatrix::from_ints(f, a) else { continue };
        cases += 1;
        let image = p.mobius(&mob).map_err(e2s)?;
        let data = extract_spectral_data(&p, &[], 0).map_err(e2s)?;
        let mut eigen: Vec<(Eigen, Vec<usize>)> =
            data.finite.iter().map(|(c, pm)| (Eigen::Finite(c.clone()), pm.clone())).collect();
        eigen.push((Eigen::Infinity, data.infinite.clone()));
        for (e, pm) in eigen {
            checks += 1;
            let moved = e.mobius(&mob).map_err(e2s)?;
            if partial_multiplicities(&image, &moved).map_err(e2s)? != pm {
                bad += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    Ok(outcome(
        bad == 0 && elapsed < BUDGET_MOBIUS,
        format!("{cases} matrices, {checks} eigenvalue checks, {bad} mismatches, {elapsed:.2?}"),
    ))
}

fn minor_gcd(m: &MatPoly, k: usize) -> Poly {
    let subsets = |n: usize| -> Vec<Vec<usize>> {
        (0u32..1 << n)
            .filter(|s| s.count_ones() as usize == k)
            .map(|s| (0..n).filter(|&i| s >> i & 1 == 1).collect())
            .collect()
    };
    let mut g = Poly::zero(m.field());
    for r in &subsets(m.rows()) {
        for c in &subsets(m.cols()) {
            g = g.gcd(&m.select(r, c).determinant().unwrap());
        }
    }
    g
}

fn criterion_5() -> Result<Outcome, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 5);
    let (mut bad, mut minor_checked) = (0, 0);
    for _ in 0..SMITH_CASES {
        let f = random_field(&mut rng);
        let (r, c) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let m = random_matpoly(&mut rng, f, r, c, 3);
        let dec = smith_form(&m);
        let diag = dec.diagonal();
        let mut ok = dec.u.mul(&m).mul(&dec.v) == dec.s
            && dec.u.is_unimodular().map_err(e2s)?
            && dec.v.is_unimodular().map_err(e2s)?
            && diag.windows(2).all(|w| w[0].divides(&w[1]))
            && diag.iter().all(|s| s.is_zero() || s.is_monic());
        for i in 0..r {
            for j in 0..c {
                ok &= i == j || dec.s.get(i, j).is_zero();
            }
        }
        if r.min(c) <= 3 {
            minor_checked += 1;
            let mut acc = Poly::one(f);
            for (k, s) in diag.iter().enumerate() {
                acc = &acc * s;
                let want = if acc.is_zero() { acc.clone() } else { acc.monic() };
                ok &= minor_gcd(&m, k + 1) == want;
            }
        }
        if !ok {
            bad += 1;
        }
    }
    Ok(outcome(
        bad == 0,
        format!("{SMITH_CASES} inputs up to 4x4, {minor_checked} with minor-gcd identity checked, {bad} failures"),
    ))
}

fn criterion_6() -> Result<Outcome, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 6);
    // The worked case.
    let v = [12, 12, 11, 9, 8, 8];
    let part = homogeneous_partition(&v, 4, 10).map_err(e2s)?;
    let grouped: Vec<Vec<i64>> = part.groups.iter().map(|g| g.iter().map(|&i| v[i]).collect()).collect();
    let worked_ok = grouped == vec![vec![12, 8], vec![12, 8], vec![11, 9]];
    let mut bad = 0;
    for _ in 0..PARTITION_CASES {
        let k = rng.gen_range(1..=6usize);
        let mu = rng.gen_range(-5..=5i64);
        let below = if k == 1 { 0 } else { rng.gen_range(0..=k as i64) };
        let (lo, hi) = (mu - below, mu - below + k as i64);
        let mut v: Vec<i64> = (0..rng.gen_range(0..15)).map(|_| rng.gen_range(lo..=hi)).collect();
        if lo == mu || hi == mu || k == 1 {
            v.iter_mut().for_each(|x| *x = mu);
        }
        let mut excess: i64 = v.iter().map(|x| x - mu).sum();
        while excess != 0 {
            let step = if excess > 0 { -(excess.min(mu - lo)) } else { (-excess).min(hi - mu) };
            v.push(mu + step);
            excess += step;
        }
        match homogeneous_partition(&v, k, mu) {
            Ok(p) => {
                let mut perm = p.permutation();
                perm.sort_unstable();
                let ok = perm == (0..v.len()).collect::<Vec<_>>()
                    && p.groups.iter().all(|g| {
                        !g.is_empty() && g.len() <= k && g.iter().map(|&i| v[i]).sum::<i64>() == mu * g.len() as i64
                    });
                bad += usize::from(!ok);
            }
            Err(_) => bad += 1,
        }
    }
    let mut hbad = 0;
    for _ in 0..HOMOGENIZE_CASES {
        let r: usize = rng.gen_range(0..10);
        let v: Vec<usize> = (0..r).map(|_| rng.gen_range(0..25)).collect();
        let (w, ops) = homogenize_vector(&v);
        let compressions = ops.iter().filter(|o| o.is_compression()).count();
        let ok = compressions <= r.saturating_sub(1)
            && replay(&v, &ops).is_ok_and(|x| x == w)
            && w.iter().max().zip(w.iter().min()).is_none_or(|(a, b)| a - b <= 1)
            && majorizes(&v, &w).unwrap_or(false);
        hbad += usize::from(!ok);
    }
    Ok(outcome(
        worked_ok && bad == 0 && hbad == 0,
        format!(
            "(12,12,11,9,8,8) -> {grouped:?}; {PARTITION_CASES} partitions {bad} failures; \
             {HOMOGENIZE_CASES} homogenizations {hbad} failures"
        ),
    ))
}

fn irreducibles_of_degree(k: usize) -> Vec<Poly> {
    match k {
        2 => vec![p("1 + x + x^2")],
        3 => vec![p("1 + x + x^3"), p("1 + x^2 + x^3")],
        4 => vec![p("1 + x + x^4"), p("1 + x^3 + x^4"), p("1 + x + x^2 + x^3 + x^4")],
        _ => unreachable!(),
    }
}

/// Random data whose factors all have degree k, size n = k·t, at degree d.
fn sharp_instance(rng: &mut ChaCha8Rng, k: usize, d: usize, t: usize) -> SpectralData {
    let n = k * t;
    let fam = irreducibles_of_degree(k);
    let mut pms: BTreeMap<Poly, Vec<usize>> = BTreeMap::new();
    for _ in 0..d * t {
        let chi = fam[rng.gen_range(0..fam.len())].clone();
        pms.entry(chi).or_insert_with(|| vec![0; n])[rng.gen_range(0..n)] += 1;
    }
    for pm in pms.values_mut() {
        pm.sort_unstable();
    }
    SpectralData {
        field: gf2(),
        n,
        grade: d,
        finite: pms,
        infinite: vec![0; n],
        invariants: None,
    }
}

fn criterion_7() -> Result<Outcome, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    let pairs = [(3usize, 2usize), (2, 3), (3, 4), (4, 3)];
    let (mut runs, mut bad, mut maj_checks) = (0, 0, 0);
    for i in 0..SHARP_CASES {
        let (k, d) = pairs[i % pairs.len()];
        let t = 1 + usize::from(i % 3 == 0 && k * d <= 6);
        let data = sharp_instance(&mut rng, k, d, t);
        let n = data.n;
        runs += 1;
        let r = realize_strictly_regular(&data, d, n).map_err(e2s)?;
        let mut ok = r.blocks.sizes.iter().all(|s| s % k == 0) && r.q.degree() == Some(d);
        // Intermediates of the pipeline: the driven and the rearranged diagonal.
        let s = MatPoly::diag(gf2(), &data.invariant_list());
        let factors: Vec<Poly> = data
            .finite
            .iter()
            .flat_map(|(c, pm)| std::iter::repeat_n(c.clone(), pm.iter().sum()))
            .collect();
        let layout = stack_factors(gf2(), &factors, n);
        let t1 = drive_diagonal(&s, &layout).map_err(e2s)?;
        let degs: Vec<i64> = (0..n).map(|i| t1.get(i, i).degree_or_zero() as i64).collect();
        let part = homogeneous_partition(&degs, k.max(data.k()), d as i64).map_err(e2s)?;
        let t2 = permute_diagonal(&t1, &part.permutation()).map_err(e2s)?;
        let mut families: Vec<CoprimePartition> = data.finite.keys().map(|c| CoprimePartition::new([c.clone()])).collect();
        families.push(CoprimePartition::new(data.finite.keys().cloned()));
        for fam in &families {
            let top = factor_counts(&s, fam);
            for t in [&t1, &t2] {
                maj_checks += 1;
                ok &= t.is_upper_triangular() && majorizes(&top, &factor_counts(t, fam)).unwrap_or(false);
            }
        }
        bad += usize::from(!ok);
    }
    Ok(outcome(
        bad == 0,
        format!(
            "{runs} instances over (k,d) in {pairs:?}: block sizes divisible by k; {maj_checks} \
             majorization checks on triangular intermediates; {bad} failures"
        ),
    ))
}

fn verified_witness(data: &SpectralData, w: &MatPoly, d: usize) -> bool {
    w.is_upper_triangular()
        && (0..data.n).all(|i| w.get(i, i).degree() == Some(d))
        && invariant_polynomials(w) == data.invariant_list()
}

/// Random two-degree data (x and 1+x+x²) with n ≤ 4.
fn random_two_degree(rng: &mut ChaCha8Rng) -> Option<(SpectralData, usize)> {
    let n = rng.gen_range(2..=4);
    let d = rng.gen_range(1..=4);
    let mut phi_pm: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=d / 2 + 1)).collect();
    phi_pm.sort_unstable();
    let left = (n * d).checked_sub(2 * phi_pm.iter().sum::<usize>())?;
    let mut psi_pm = vec![0; n];
    for _ in 0..left {
        psi_pm[rng.gen_range(0..n)] += 1;
    }
    psi_pm.sort_unstable();
    let rows: Vec<(Poly, Vec<usize>)> = vec![(phi(), phi_pm), (psi(), psi_pm)]
        .into_iter()
        .filter(|(_, pm)| pm.iter().any(|&a| a > 0))
        .collect();
    if rows.is_empty() {
        return None;
    }
    Some((gf2_data(&rows, d), d))
}

fn criterion_8() -> Result<Outcome, String> {
    let start = Instant::now();
    let mut notes = Vec::new();
    // Literal statement: the d=7, n=8 instance with the stated vectors.
    let literal_yes = check_two_degree(&two_degree_instance(&[0, 0, 0, 0, 2, 5, 5, 5]), 7, 8);
    let literal_no = check_two_degree(&two_degree_instance(&[1, 1, 1, 2, 3, 3, 3, 3]), 7, 8);
    let show = |r: &polyqt::Result<polyqt::triangcheck::TriangReport>| match r {
        Ok(r) => r.verdict.to_string(),
        Err(e) => e.code().to_string(),
    };
    let literal_ok = matches!(&literal_yes, Ok(r) if r.verdict == Verdict::Guaranteed
            && r.witness.as_ref().is_some_and(|w| verified_witness(&two_degree_instance(&[0, 0, 0, 0, 2, 5, 5, 5]), w, 7)))
        && matches!(&literal_no, Ok(r) if r.verdict == Verdict::CharacterizedNo);
    notes.push(format!("literal d=7: f1 -> {}, f~1 -> {}", show(&literal_yes), show(&literal_no)));

    // The same vectors on the instance they belong to (d=10, three degrees).
    let three_yes = three_degree_instance(&[0, 0, 0, 0, 2, 5, 5, 5]);
    let r = check_sufficient(&three_yes, 10, 8).map_err(e2s)?;
    let three_ok = r.verdict == Verdict::Guaranteed && r.witness.as_ref().is_some_and(|w| verified_witness(&three_yes, w, 10));
    let r2 = check_sufficient(&three_degree_instance(&[1, 1, 1, 2, 3, 3, 3, 3]), 10, 8).map_err(e2s)?;
    notes.push(format!("d=10 instance: f1 -> {} (witness verified {three_ok}), f~1 -> {}", r.verdict, r2.verdict));

    // d=7 with one more degree-1 factor on each vector.
    let yes = two_degree_instance(&[0, 0, 0, 0, 2, 5, 5, 6]);
    let ry = check_two_degree(&yes, 7, 8).map_err(e2s)?;
    let rn = check_two_degree(&two_degree_instance(&[1, 1, 2, 2, 3, 3, 3, 3]), 7, 8).map_err(e2s)?;
    let adjusted_ok = ry.verdict == Verdict::Guaranteed
        && ry.witness.as_ref().is_some_and(|w| verified_witness(&yes, w, 7))
        && rn.verdict == Verdict::CharacterizedNo;
    notes.push(format!("d=7 with sums 18: {} / {}", ry.verdict, rn.verdict));

    // Exhaustive search never contradicts a verdict.
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 8);
    let (mut tried, mut nos, mut contradictions) = (0, 0, 0);
    while tried < BRUTE_CASES {
        let Some((data, d)) = random_two_degree(&mut rng) else { continue };
        if data.validate().is_err() || data.check_index_sum().is_err() {
            continue;
        }
        let Ok(rep) = check_two_degree(&data, d, data.n) else { continue };
        tried += 1;
        let found = find_triangular_diagonal(&data, d).is_some();
        match rep.verdict {
            Verdict::CharacterizedNo => {
                nos += 1;
                contradictions += usize::from(found);
            }
            Verdict::Guaranteed => contradictions += usize::from(!found),
            Verdict::Unknown => {}
        }
    }
    let elapsed = start.elapsed();
    notes.push(format!("{tried} random n<=4 instances, {nos} characterized-no, {contradictions} contradictions"));
    notes.push(format!("{elapsed:.2?}"));
    Ok(outcome(
        literal_ok && three_ok && adjusted_ok && contradictions == 0 && elapsed < BUDGET_TRIANG,
        notes.join("; "),
    ))
}

fn criterion_9() -> Result<Outcome, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);
    let (mut failures, mut wrong) = (0usize, 0usize);
    let mut log = Vec::new();
    for case in 0..EQUALIZE_CASES {
        let f = random_field(&mut rng);
        let m = rng.gen_range(1..=4);
        let d = rng.gen_range(1..=4);
        // Diagonal degrees summing to m·d, pushed apart by random unit moves.
        let mut degs = vec![d; m];
        for _ in 0..rng.gen_range(0..=2 * m) {
            let (i, j) = (rng.gen_range(0..m), rng.gen_range(0..m));
            if degs[j] > 0 && i != j {
                degs[i] += 1;
                degs[j] -= 1;
            }
        }
        let mut b = MatPoly::zeros(f, m, m);
        for (i, &dg) in degs.iter().enumerate() {
            b.set(i, i, random_poly_of_degree(&mut rng, f, dg));
            for j in i + 1..m {
                b.set(i, j, random_poly(&mut rng, f, 2 * d));
            }
        }
        let b = b.fitted();
        match equalize_with_transforms(&b, d) {
            Ok(eq) => {
                let ok = eq.u.mul(&b).mul(&eq.v) == eq.result
                    && eq.result.degree() == Some(d)
                    && eq.result.with_grade(d).is_ok_and(|r| r.is_strictly_regular())
                    && eq.u.is_unimodular().unwrap_or(false)
                    && eq.v.is_unimodular().unwrap_or(false);
                wrong += usize::from(!ok);
            }
            Err(Error::EqualizationFailed(steps)) => {
                failures += 1;
                log.push(format!("case {case}: EqualizationFailed after {steps} steps"));
            }
            Err(e) => {
                wrong += 1;
                log.push(format!("case {case}: {}", e2s(e)));
            }
        }
    }
    for line in &log {
        println!("    {line}");
    }
    let rate = failures as f64 / EQUALIZE_CASES as f64;
    Ok(outcome(
        wrong == 0 && rate <= EQUALIZE_MAX_FAILURE_RATE,
        format!("{EQUALIZE_CASES} blocks (m<=4, GF(2|3|5)), failure rate {rate:.3}, {wrong} incorrect results"),
    ))
}

type Check = fn() -> Result<Outcome, String>;

fn main() -> ExitCode {
    let criteria: [(usize, &str, Check); 9] = [
        (1, "golden pipeline", criterion_1),
        (2, "witness verification", criterion_2),
        (3, "infinite-structure realization", criterion_3),
        (4, "Mobius moves partial multiplicities", criterion_4),
        (5, "Smith form correctness", criterion_5),
        (6, "combinatorics", criterion_6),
        (7, "sharp-bound block sizes", criterion_7),
        (8, "triangularizability", criterion_8),
        (9, "equalization contract", criterion_9),
    ];
    let mut unexpected = 0;
    for (id, name, f) in criteria {
        let (o, t) = run(f);
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {id} {status} [{name}] {} ({t:.2?})", o.detail);
        if !o.pass {
            match KNOWN_UNATTAINABLE.iter().find(|(k, _)| *k == id) {
                Some((_, why)) => println!("    known unattainable as stated: {why}"),
                None => unexpected += 1,
            }
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criteria failed unexpectedly");
        ExitCode::FAILURE
    }
}
