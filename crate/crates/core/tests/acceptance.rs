//! Acceptance checks for the `Q_2` / `M_{3,2}` computation, one PASS/FAIL
//! line per criterion. Expected values are written out from the printed
//! formulas and tables; computed values come both from the library API and
//! from the shipped scenarios.

use std::io::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use vgcalc::catalog::{bm_poly, coh_poly, twisted_config_bm};
use vgcalc::scenario::{parse_scenario_file, run, Report};
use vgcalc::spectral::{apply_differentials, assemble_page, les_solve, total_poly};
use vgcalc::strata::cone_bm;
use vgcalc::sym_char::{character_table, partitions_of};
use vgcalc::{
    Ambient, ConnectingDecl, DifferentialDecl, HGPoly, LesMode, LesRole, MotiveClass, Page,
    Partition, RepVector, SpaceId, SpaceKind, StratumDescriptor, Variance,
};

// ---- building blocks -----------------------------------------------------

fn class(s2: i64, s11: i64, tate: i32) -> MotiveClass {
    MotiveClass::irreducible(Partition::trivial(2), s2, tate)
        .add(&MotiveClass::irreducible(
            Partition::new(&[1, 1]).unwrap(),
            s11,
            tate,
        ))
        .unwrap()
}

/// `Σ (a·s[2] + b·s[1,1]) L^k t^d` over `(a, b, k, d)`.
fn hg(terms: &[(i64, i64, i32, i32)]) -> HGPoly {
    terms.iter().fold(HGPoly::zero(), |acc, &(a, b, k, d)| {
        acc.add(&HGPoly::monomial(class(a, b, k), d)).unwrap()
    })
}

/// Non-equivariant `Σ c L^k t^d`.
fn plain(terms: &[(i64, i32, i32)]) -> HGPoly {
    HGPoly::from_terms(
        terms
            .iter()
            .map(|&(c, k, d)| (d, MotiveClass::tate(k).scale(c))),
    )
    .unwrap()
}

fn one_plus(k: i32, d: i32) -> HGPoly {
    plain(&[(1, 0, 0), (1, k, d)])
}

fn prod(factors: &[HGPoly]) -> HGPoly {
    factors
        .iter()
        .fold(HGPoly::one(), |acc, f| acc.mul(f).unwrap())
}

fn space(kind: SpaceKind) -> SpaceId {
    SpaceId::new(kind)
}

fn coh(id: SpaceId) -> HGPoly {
    coh_poly(id).unwrap()
}

fn bm(id: SpaceId) -> HGPoly {
    bm_poly(id).unwrap()
}

fn solve(
    a: Option<&HGPoly>,
    x: Option<&HGPoly>,
    u: Option<&HGPoly>,
    connect: &[(i32, MotiveClass)],
    mode: LesMode,
) -> HGPoly {
    let decls: Vec<ConnectingDecl> = connect
        .iter()
        .map(|(k, c)| ConnectingDecl::new(*k, c.clone()))
        .collect();
    let (role, solved) = les_solve(a, x, u, &decls, mode).unwrap();
    let unknown = match (a, x) {
        (None, _) => LesRole::A,
        (_, None) => LesRole::X,
        _ => LesRole::U,
    };
    assert_eq!(role, unknown);
    solved
}

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn scenario(name: &str) -> Report {
    let report = run(&parse_scenario_file(&root().join("scenarios").join(name)).unwrap()).unwrap();
    assert!(report.passed(), "{}", report.render_summary());
    assert!(report.warnings.is_empty(), "{:?}", report.warnings);
    report
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(root().join("goldens").join(name)).unwrap()
}

// ---- printed values ------------------------------------------------------

/// First block contribution to `Q_2`.
fn first_block() -> HGPoly {
    hg(&[(1, 0, 0, 0), (1, 1, 1, 2), (1, 0, 3, 5)])
}

/// Second block contribution to `Q_2`.
fn second_block() -> HGPoly {
    hg(&[(1, 0, 6, 6), (1, 1, 7, 8), (0, 1, 8, 8)])
}

fn gl3() -> HGPoly {
    prod(&[one_plus(1, 1), one_plus(2, 3), one_plus(3, 5)])
}

fn q2_poly() -> HGPoly {
    hg(&[
        (1, 0, 0, 0),
        (1, 1, 1, 2),
        (1, 0, 3, 5),
        (1, 0, 6, 6),
        (1, 1, 7, 8),
        (0, 1, 8, 8),
    ])
}

fn m32_poly() -> HGPoly {
    hg(&[
        (1, 0, 0, 0),
        (2, 1, 1, 2),
        (1, 1, 2, 4),
        (1, 0, 3, 5),
        (1, 0, 6, 6),
        (1, 1, 7, 8),
    ])
}

fn hyperelliptic() -> HGPoly {
    hg(&[(1, 0, 0, 0), (1, 1, 1, 2), (0, 1, 7, 7)])
}

/// Second factor of the first-seven-columns polynomial.
fn projectivized() -> HGPoly {
    hg(&[
        (1, 0, 0, 0),
        (2, 1, 2, 3),
        (0, 1, 3, 4),
        (1, 1, 4, 6),
        (0, 1, 5, 7),
    ])
}

/// `E^1` page of the first seven strata as printed: `(row, column, s[2],
/// s[1,1], m)` for the class `Q(m)`.
const STRATA_E1: &[(i32, i32, i64, i64, i32)] = &[
    (22, 2, 1, 0, 12),
    (21, 1, 1, 1, 11),
    (20, 2, 1, 0, 11),
    (19, 2, 0, 1, 10),
    (17, 4, 1, 1, 10),
    (16, 3, 0, 1, 9),
    (16, 5, 1, 0, 10),
    (15, 4, 1, 0, 9),
    (15, 5, 0, 1, 9),
    (14, 4, 0, 1, 8),
    (12, 6, 0, 1, 8),
    (11, 7, 1, 0, 8),
    (10, 7, 0, 1, 7),
];

// ---- library-level reconstruction of the strata --------------------------

fn strata_columns() -> Vec<(i32, HGPoly)> {
    let both = class(1, 1, 0);
    let both_poly = HGPoly::constant(both.clone());
    let s11 = HGPoly::constant(class(0, 1, 0));
    let s2 = HGPoly::constant(class(1, 0, 0));
    let a2 = bm(space(SpaceKind::Affine(2)));
    let plane_minus_pq = solve(
        Some(&both_poly),
        Some(&bm(SpaceId::marked(SpaceKind::Projective(2)))),
        None,
        &[(1, class(0, 1, 0))],
        LesMode::Bm,
    );
    let pairs = twisted_config_bm(2, 1, Ambient::Projective)
        .unwrap()
        .mul(&s2)
        .unwrap();
    let line_pairs = solve(
        Some(&s11),
        Some(&pairs),
        None,
        &[(1, class(0, 1, 0))],
        LesMode::Bm,
    );
    let gm = bm(SpaceId::marked(SpaceKind::Torus));
    let d =
        |label: &str, base: HGPoly, m: u32, r: u32| StratumDescriptor::new(label, base, m, r).bm();
    vec![
        (1, d("1", both_poly.clone(), 0, 11)),
        (2, d("2", plane_minus_pq, 0, 10)),
        (3, d("3", s11.clone(), 1, 9)),
        (
            4,
            d("4a", line_pairs.clone(), 1, 8)
                .add(&d("4b", both_poly.mul(&a2).unwrap(), 1, 8))
                .unwrap(),
        ),
        (5, d("5", gm.mul(&a2).unwrap(), 1, 7)),
        (6, d("6", s11.mul(&a2).unwrap(), 2, 6)),
        (7, d("7", line_pairs.mul(&a2).unwrap(), 2, 5)),
    ]
}

fn strata_page() -> Page {
    assemble_page(Variance::Homological, 1, &strata_columns()).unwrap()
}

fn leray_page() -> Page {
    let base = coh(SpaceId::marked(SpaceKind::F2ProjectivePlane));
    Page::outer_product(Variance::Cohomological, 2, &base, &projectivized()).unwrap()
}

// ---- criteria ------------------------------------------------------------

fn q2_cohomology() {
    let report = scenario("m32_main.vgl");
    let q2 = report.poly("thm1i").unwrap();
    assert_eq!(q2, &q2_poly());
    let sum = report
        .poly("eq4")
        .unwrap()
        .add(report.poly("eq9").unwrap())
        .unwrap();
    assert_eq!(&sum, q2);
    assert_eq!(first_block().add(&second_block()).unwrap(), q2_poly());
}

fn m32_cohomology() {
    let m32 = solve(
        Some(&hyperelliptic()),
        None,
        Some(&q2_poly()),
        &[(8, class(0, 1, 8))],
        LesMode::Gysin,
    );
    assert_eq!(m32, m32_poly());
    assert_eq!(
        scenario("m32_main.vgl").poly("thm1ii").unwrap(),
        &m32_poly()
    );
}

fn strata_golden() {
    let page = strata_page();
    for (q, p, a, b, m) in STRATA_E1 {
        assert_eq!(
            page.entry((*p, *q)),
            class(*a, *b, -m),
            "row {q}, column {p}"
        );
    }
    assert_eq!(page.entries().count(), STRATA_E1.len());
    assert_eq!(page.render_table(), golden("table2.txt"));
    let report = scenario("m32_block1.vgl");
    assert_eq!(report.page("table2").unwrap(), &page);
    assert_eq!(
        report.artifact("table2").unwrap().golden_text(),
        golden("table2.txt")
    );
}

fn eq3() {
    let page = strata_page();
    let (limit, unresolved) = apply_differentials(
        &page,
        &[DifferentialDecl::image(2, (5, 15), MotiveClass::zero())],
    )
    .unwrap();
    assert!(unresolved.is_empty(), "{unresolved:?}");
    assert_eq!(limit, page);
    let cohomology = total_poly(&limit)
        .alexander_dual(13)
        .unwrap()
        .unreduced()
        .unwrap();
    let expected = one_plus(1, 1).mul(&projectivized()).unwrap();
    assert_eq!(cohomology, expected);
    assert_eq!(
        cohomology.exact_divide(&one_plus(1, 1)).unwrap(),
        projectivized()
    );
    assert_eq!(scenario("m32_block1.vgl").poly("eq3").unwrap(), &expected);
}

fn leray_golden() {
    let page = leray_page();
    // Rows as printed, Q(-k) = L^k.
    // Row q, then (s[2], s[1,1], k) in columns 0, 2, 4, 6.
    type Row = (i32, [(i64, i64, i32); 4]);
    let rows: &[Row] = &[
        (7, [(0, 1, 5), (1, 1, 6), (1, 1, 7), (1, 0, 8)]),
        (6, [(1, 1, 4), (2, 2, 5), (2, 2, 6), (1, 1, 7)]),
        (4, [(0, 1, 3), (1, 1, 4), (1, 1, 5), (1, 0, 6)]),
        (3, [(2, 1, 2), (3, 3, 3), (3, 3, 4), (1, 2, 5)]),
        (0, [(1, 0, 0), (1, 1, 1), (1, 1, 2), (0, 1, 3)]),
    ];
    for (q, cells) in rows {
        for (i, (a, b, k)) in cells.iter().enumerate() {
            assert_eq!(
                page.entry((2 * i as i32, *q)),
                class(*a, *b, *k),
                "({}, {q})",
                2 * i
            );
        }
    }
    assert_eq!(page.entries().count(), 20);
    assert_eq!(page.render_table(), golden("table3.txt"));
    assert_eq!(
        scenario("m32_block1.vgl")
            .artifact("table3")
            .unwrap()
            .golden_text(),
        golden("table3.txt")
    );
}

fn first_block_criterion() {
    let decls = vec![
        DifferentialDecl::image(2, (0, 4), class(0, 1, 3)),
        DifferentialDecl::image(2, (2, 4), class(1, 1, 4)),
        DifferentialDecl::image(2, (4, 4), class(1, 1, 5)),
        DifferentialDecl::image(2, (0, 7), class(0, 1, 5)),
        DifferentialDecl::image(2, (2, 7), class(1, 1, 6)),
        DifferentialDecl::image(2, (4, 7), class(1, 1, 7)),
        DifferentialDecl::rank(4, (0, 3), 2),
        DifferentialDecl::image(4, (2, 3), class(0, 1, 3)),
        DifferentialDecl::image(4, (0, 6), class(1, 1, 4)),
        DifferentialDecl::image(4, (2, 6), class(0, 1, 5)),
    ];
    let (limit, unresolved) = apply_differentials(&leray_page(), &decls).unwrap();
    assert!(unresolved.is_empty(), "{unresolved:?}");
    let i2 = one_plus(1, 1).mul(&total_poly(&limit)).unwrap();
    assert_eq!(i2, gl3().mul(&first_block()).unwrap());
    assert_eq!(
        i2.exact_divide(&coh(space(SpaceKind::Gl3))).unwrap(),
        first_block()
    );
    let report = scenario("m32_block1.vgl");
    assert_eq!(report.limit("table3").unwrap(), &limit);
    assert_eq!(report.poly("eq4").unwrap(), &first_block());
}

fn four_lines_total() -> HGPoly {
    let page = assemble_page(
        Variance::Homological,
        1,
        &[
            (1, hg(&[(1, 0, 0, 0)])),
            (
                2,
                HGPoly::constant(class(1, 1, 0))
                    .mul(&bm(space(SpaceKind::Torus)))
                    .unwrap(),
            ),
            (3, hg(&[(0, 2, 0, 2), (1, 1, -1, 3), (1, 0, -2, 4)])),
        ],
    )
    .unwrap();
    // Entries as printed.
    assert_eq!(page.entry((3, 1)), class(1, 0, -2));
    assert_eq!(page.entry((2, 0)), class(1, 1, -1));
    assert_eq!(page.entry((3, 0)), class(1, 1, -1));
    assert_eq!(page.entry((1, -1)), class(1, 0, 0));
    assert_eq!(page.entry((2, -1)), class(1, 1, 0));
    assert_eq!(page.entry((3, -1)), class(0, 2, 0));
    assert_eq!(page.entries().count(), 6);
    let decls = [
        DifferentialDecl::image(1, (3, 0), class(1, 1, -1)),
        DifferentialDecl::rank(1, (2, -1), 1),
        DifferentialDecl::rank(1, (3, -1), 1),
    ];
    let (limit, unresolved) = apply_differentials(&page, &decls).unwrap();
    assert!(unresolved.is_empty(), "{unresolved:?}");
    total_poly(&limit)
}

fn second_block_criterion() {
    let pgl = bm(space(SpaceKind::Pgl3));
    let s2 = |k, d| hg(&[(1, 0, k, d)]);
    // Singular conics, then W_E / G.
    let k_locus = solve(
        Some(&bm(SpaceId::marked(SpaceKind::F2ProjectiveLine))),
        None,
        Some(&s2(-2, 4)),
        &[],
        LesMode::Bm,
    );
    let smooth = bm(SpaceId::marked(SpaceKind::F2ProjectiveLine)).shift(1);
    let w = solve(
        Some(&k_locus),
        None,
        Some(&smooth),
        &[(5, class(1, 0, -2)), (3, class(1, 0, -1))],
        LesMode::Bm,
    );
    assert_eq!(w, s2(-2, 4));
    let x8 = solve(
        Some(&s2(-1, 2)),
        Some(&w),
        None,
        &[(3, class(1, 0, -1))],
        LesMode::Bm,
    );
    assert_eq!(x8, hg(&[(1, 0, -1, 3), (1, 0, -2, 4)]));
    let x8 = x8.mul(&pgl).unwrap();
    let x9a = bm(SpaceId::marked(SpaceKind::F2ProjectiveLineTwisted))
        .mul(&pgl)
        .unwrap();
    let x9b = four_lines_total().mul(&pgl).unwrap();
    let x9 = solve(Some(&x9a), None, Some(&x9b), &[], LesMode::Bm);
    let phi8 = StratumDescriptor::new("8", x8, 4, 0).bm();
    let phi9 = StratumDescriptor::new("9", x9, 5, 0).bm();
    let psi = solve(
        Some(&phi8),
        None,
        Some(&phi9),
        &[
            (25, class(1, 0, -10)),
            (22, class(1, 0, -8)),
            (20, class(1, 0, -7)),
            (17, class(1, 0, -5)),
        ],
        LesMode::Bm,
    );
    let factor = hg(&[(1, 0, -2, 9), (1, 1, -1, 7), (0, 1, 0, 7)]);
    assert_eq!(psi, factor.mul(&pgl).unwrap());
    let lines = StratumDescriptor::new("8-9", psi.clone(), 0, 1).bm();
    let discriminant = solve(Some(&lines), None, Some(&cone_bm(&psi)), &[], LesMode::Bm);
    assert_eq!(discriminant, psi.mul(&bm(space(SpaceKind::Torus))).unwrap());
    assert_eq!(
        discriminant,
        factor.mul(&bm(space(SpaceKind::Gl3))).unwrap()
    );
    let complement = discriminant.alexander_dual(17).unwrap();
    assert_eq!(complement, gl3().mul(&second_block()).unwrap());
    assert_eq!(
        complement
            .exact_divide(&coh(space(SpaceKind::Gl3)))
            .unwrap(),
        second_block()
    );

    let report = scenario("m32_block2.vgl");
    for (name, value) in [
        ("eq5", &psi),
        ("eq6", &discriminant),
        ("eq8", &complement),
        ("eq9", &second_block()),
    ] {
        assert_eq!(report.poly(name).unwrap(), value, "{name}");
    }
}

fn four_lines_criterion() {
    assert_eq!(four_lines_total(), hg(&[(0, 1, 0, 2), (1, 0, -2, 4)]));
    assert_eq!(
        scenario("m32_block2.vgl")
            .artifact("table4")
            .unwrap()
            .golden_text(),
        golden("table4.txt")
    );
}

/// Betti numbers of `Gr(k, C^N)` from its Schubert cells.
fn schubert(k: u32, n: u32) -> Vec<(i32, i64)> {
    let mut counts = std::collections::BTreeMap::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() == k {
            let dim: u32 = (0..n)
                .filter(|b| mask >> b & 1 == 1)
                .enumerate()
                .map(|(i, b)| b - i as u32)
                .sum();
            *counts.entry(2 * dim as i32).or_insert(0) += 1;
        }
    }
    counts.into_iter().collect()
}

fn configuration_spaces() {
    for n in 1..=6u8 {
        for k in 2..=6u8 {
            assert!(twisted_config_bm(k, n, Ambient::Affine).unwrap().is_zero());
        }
        for k in 1..=10u8 {
            let vanishes = twisted_config_bm(k, n, Ambient::Projective)
                .unwrap()
                .is_zero();
            assert_eq!(vanishes, k >= n + 2, "k={k}, N={n}");
        }
        for k in 0..=n {
            let betti: Vec<(i32, i64)> = coh(space(SpaceKind::Grassmannian(k, n)))
                .betti()
                .terms()
                .collect();
            assert_eq!(betti, schubert(k.into(), n.into()), "Gr({k},{n})");
        }
    }
    let report = scenario("configurations.vgl");
    assert!(!report.assertions.is_empty());
}

fn euler_specialization() {
    // Betti numbers 1, 3, 2, 1, 1, 2 in degrees 0, 2, 4, 5, 6, 8.
    let betti: Vec<(i32, i64)> = m32_poly().betti().terms().collect();
    assert_eq!(betti, vec![(0, 1), (2, 3), (4, 2), (5, 1), (6, 1), (8, 2)]);
    let by_hand = 1 + 3 + 2 - 1 + 1 + 2;
    assert_eq!(m32_poly().euler_class().dimension(), by_hand);
    assert_eq!(m32_poly().betti().eval_sign(true), by_hand);
    assert_eq!(by_hand, 8);
    let mut checks = 0;
    for name in [
        "m32_block1.vgl",
        "m32_block2.vgl",
        "m32_main.vgl",
        "configurations.vgl",
    ] {
        for check in scenario(name).euler_checks {
            assert_eq!(check.before, check.after, "{name}: {}", check.page);
            checks += 1;
        }
    }
    assert!(checks > 0);
}

fn arb_poly() -> impl Strategy<Value = HGPoly> {
    prop::collection::vec((-4i32..=4, -3i64..=3, -3i64..=3, -3i32..=3), 0..5).prop_map(|terms| {
        terms.into_iter().fold(HGPoly::zero(), |acc, (d, a, b, k)| {
            acc.add(&HGPoly::monomial(class(a, b, k), d)).unwrap()
        })
    })
}

fn arb_rep(n: u8) -> impl Strategy<Value = RepVector> {
    let parts = partitions_of(n.into()).unwrap();
    prop::collection::vec(-2i64..=2, parts.len())
        .prop_map(move |c| RepVector::from_terms(parts.clone().into_iter().zip(c)).unwrap())
}

fn algebra_properties() {
    let mut runner = TestRunner::new(Config::with_cases(1000));
    runner
        .run(
            &(arb_poly(), arb_poly(), arb_poly(), 1i32..=20),
            |(a, b, c, m)| {
                prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
                prop_assert_eq!(
                    a.mul(&b).unwrap().mul(&c).unwrap(),
                    a.mul(&b.mul(&c).unwrap()).unwrap()
                );
                prop_assert_eq!(
                    a.mul(&b.add(&c).unwrap()).unwrap(),
                    a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
                );
                prop_assert_eq!(
                    a.alexander_dual(m).unwrap().alexander_inverse(m).unwrap(),
                    a.clone()
                );
                prop_assert_eq!(a.poincare_dual_bm(m).poincare_dual_coh(m), a.clone());
                let divisor = one_plus(1, 1)
                    .add(&b.shift(2 - b.min_degree().unwrap_or(0)))
                    .unwrap();
                prop_assert_eq!(a.mul(&divisor).unwrap().exact_divide(&divisor).unwrap(), a);
                Ok(())
            },
        )
        .unwrap();
    for n in 1..=5u8 {
        let t = character_table(n).unwrap();
        let k = t.partitions.len();
        for i in 0..k {
            for j in 0..k {
                let s: i64 = (0..k)
                    .map(|c| t.class_sizes[c] as i64 * t.values[i][c] * t.values[j][c])
                    .sum();
                assert_eq!(s, if i == j { t.order() as i64 } else { 0 });
            }
        }
    }
    let mut runner = TestRunner::new(Config::with_cases(1000));
    let strategy = (1u8..=4).prop_flat_map(|n| (arb_rep(n), arb_rep(n), arb_rep(n)));
    runner
        .run(&strategy, |(a, b, c)| {
            prop_assert_eq!(
                a.kronecker(&b).unwrap().kronecker(&c).unwrap(),
                a.kronecker(&b.kronecker(&c).unwrap()).unwrap()
            );
            Ok(())
        })
        .unwrap();
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn()); 11] = [
        (
            "Q_2 is the first block plus the second block",
            q2_cohomology,
        ),
        ("M_3,2 from Q_2 and the hyperelliptic locus", m32_cohomology),
        (
            "golden table2: E^1 page of the first seven strata",
            strata_golden,
        ),
        ("first seven columns and their projectivization", eq3),
        (
            "golden table3: E_2 page of the first-block Leray sequence",
            leray_golden,
        ),
        (
            "first block via the Leray spectral sequence",
            first_block_criterion,
        ),
        (
            "second block: types 8-10 through Alexander duality",
            second_block_criterion,
        ),
        (
            "pairs on four lines leave s[1,1]t^2 + s[2]L^-2t^4",
            four_lines_criterion,
        ),
        (
            "configuration spaces and Grassmannians",
            configuration_spaces,
        ),
        (
            "Euler characteristic 8 and Euler conservation",
            euler_specialization,
        ),
        ("algebra property suite", algebra_properties),
    ];
    // Write past the test harness's capture so the lines land in the log.
    let mut out = std::io::stdout().lock();
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let ok = catch_unwind(AssertUnwindSafe(check)).is_ok();
        let verdict = if ok { "PASS" } else { "FAIL" };
        writeln!(out, "{verdict} [{}] {name}", i + 1).unwrap();
        if !ok {
            failed.push(i + 1);
        }
    }
    out.flush().unwrap();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
