use rigid4::catalog::{
    algebraic_degree5, algebraic_degree8, hurwitz_operator, u2_operator, u3_operator, AlgebraicSolution, PSI_IN_XI,
    PSI_PHI1_WEIGHT, RATIONAL_DEGREE10_HEAD,
};
use rigid4::exactnum::{parse_rat, rat, CycElt, Rat};
use rigid4::ode::{
    newton_root, ode_coefficients, pfq_series, series_solutions, verify_algebraic, PfqNormalization, PowerSeries,
    SingularPoint,
};

fn q(s: &str) -> Rat {
    parse_rat(s).unwrap()
}

fn qs(v: &[&str]) -> Vec<Rat> {
    v.iter().map(|s| q(s)).collect()
}

fn solution(fx: &AlgebraicSolution, n: usize) -> PowerSeries {
    let (p0, p1) = series_solutions(&fx.coefficients(), n).unwrap();
    p0.add(&p1.scale(&fx.head[1]))
}

#[test]
fn degree5_constants_and_solution() {
    let fx = algebraic_degree5();
    assert_eq!(fx.coefficients().constants, qs(&["7", "4", "10", "413/36", "20/9", "46/25", "2387/1800", "-16/625"]));
    let y = solution(&fx, 40);
    assert_eq!(y.coeff(2), fx.head[2]);
    assert!(verify_algebraic(&fx.poly, &y, 40).unwrap());
    // a different member of the solution space is not a root
    let (p0, _) = series_solutions(&fx.coefficients(), 40).unwrap();
    assert!(!verify_algebraic(&fx.poly, &p0, 40).unwrap());
}

#[test]
fn degree10_rational_head() {
    let fx = algebraic_degree5();
    let (p0, p1) = series_solutions(&fx.coefficients(), 4).unwrap();
    let head = qs(RATIONAL_DEGREE10_HEAD);
    let y = p0.add(&p1.scale_rat(&head[1]));
    assert_eq!(y.to_rats().unwrap(), head);
}

#[test]
fn degree8_constants_and_solution() {
    let fx = algebraic_degree8();
    assert_eq!(
        fx.coefficients().constants,
        qs(&["7", "4", "319/32", "3295/288", "20/9", "117/64", "383/288", "-63/4096"])
    );
    let y = solution(&fx, 32);
    assert_eq!(y.coeff(2), fx.head[2]);
    assert!(verify_algebraic(&fx.poly, &y, 32).unwrap());
}

#[test]
fn psi_is_cubic_in_trinomial_root() {
    let fx = algebraic_degree8();
    let n = 20;
    let (p0, p1) = series_solutions(&fx.coefficients(), n).unwrap();
    let psi = p0.mul(&p0).sub(&p1.mul(&p1).scale_rat(&q(PSI_PHI1_WEIGHT)));
    let c = |v: &str| PowerSeries::from_rats(&qs(&[v]), n);
    let trinomial = [PowerSeries::from_rats(&qs(&["0", "27"]), n), c("0"), c("0"), c("-4"), c("1")];
    let xi = newton_root(&trinomial, &CycElt::from_int(1, 4), n).unwrap();
    let cubic: Vec<PowerSeries> = PSI_IN_XI.iter().map(|v| c(v)).collect();
    assert_eq!(PowerSeries::eval_poly(&cubic, &xi), psi);
}

#[test]
fn hurwitz_exponents() {
    let op = hurwitz_operator();
    assert_eq!(op.indicial(SingularPoint::Zero).unwrap().roots, qs(&["0", "1/3", "2/3", "1"]));
    assert_eq!(op.indicial(SingularPoint::One).unwrap().roots, qs(&["0", "1/2", "1", "3/2"]));
    assert_eq!(op.indicial(SingularPoint::Infinity).unwrap().roots, qs(&["-1/28", "3/28", "1/4", "19/28"]));
}

#[test]
fn pullback_operator_exponents() {
    for r in [rat(1, 5), rat(2, 7), rat(3, 11)] {
        let want = |v: Vec<Rat>| {
            let mut v = v;
            v.sort();
            v
        };
        let u2 = u2_operator(&r);
        assert_eq!(
            u2.indicial(SingularPoint::Zero).unwrap().roots,
            want(vec![r.clone(), -&r / rat(2, 1), (rat(1, 1) - &r) / rat(2, 1)])
        );
        assert_eq!(u2.indicial(SingularPoint::One).unwrap().roots, qs(&["0", "1/2", "1"]));
        assert_eq!(u2.indicial(SingularPoint::Infinity).unwrap().roots, qs(&["0", "1/3", "2/3"]));
        let u3 = u3_operator(&r);
        assert_eq!(u3.indicial(SingularPoint::Zero).unwrap().roots, qs(&["0", "1/3", "2/3", "1"]));
        assert_eq!(u3.indicial(SingularPoint::One).unwrap().roots, qs(&["0", "1/2", "1", "3/2"]));
        let third = rat(1, 3);
        assert_eq!(
            u3.indicial(SingularPoint::Infinity).unwrap().roots,
            want(vec![r.clone(), -&r * &third, (rat(1, 1) - &r) * &third, (rat(2, 1) - &r) * &third])
        );
    }
}

#[test]
fn trinomial_series() {
    // u (1 - u)^4 = (4^4 / 5^5) t, f = (5^5 / 4^4) u / t
    let n = 8;
    let c = rat(256, 3125);
    let t = PowerSeries::x(n + 1);
    let k = |v: i64| PowerSeries::from_rats(&[rat(v, 1)], n + 1);
    let eq = [t.scale_rat(&-c.clone()), k(1), k(-4), k(6), k(-4), k(1)];
    let u = newton_root(&eq, &CycElt::zero(1), n + 1).unwrap();
    let f = u.shift_down(1).unwrap().scale_rat(&(rat(1, 1) / &c));
    let t1 = rat(1024, 3125);
    let printed = qs(&["1", "1", "13/8", "51/16", "1771/256", "4095/256"]);
    for (k, p) in printed.iter().enumerate() {
        let mut scale = rat(1, 1);
        for _ in 0..k {
            scale *= &t1;
        }
        assert_eq!(f.coeff(k).to_rat().unwrap(), p * scale);
    }
    let f43 =
        pfq_series(&qs(&["4/5", "6/5", "7/5", "8/5"]), &qs(&["3/2", "5/4", "7/4", "2"]), n, PfqNormalization::Verbatim)
            .unwrap();
    assert_eq!(f43, f.truncate(n));
}

#[test]
fn hypergeometric_power_identity() {
    let n = 10;
    let f43 =
        pfq_series(&qs(&["4/5", "6/5", "7/5", "8/5"]), &qs(&["3/2", "5/4", "7/4", "2"]), n, PfqNormalization::Verbatim)
            .unwrap();
    for r in [rat(1, 3), rat(2, 7), rat(3, 2)] {
        let fifth = |k: i64| rat(k, 5) + rat(4, 5) * &r;
        let upper = [fifth(0), fifth(1), fifth(2), fifth(3), fifth(4)];
        let lower = [&r + rat(1, 1), &r + rat(3, 4), &r + rat(1, 2), &r + rat(1, 4), rat(1, 1)];
        let f54 = pfq_series(&upper, &lower, n, PfqNormalization::Verbatim).unwrap();
        assert_eq!(f43.pow_rat(&r).unwrap(), f54, "r = {r}");
    }
}

#[test]
fn exponent_sum_is_constant() {
    // Fuchs relation: twelve local exponents always sum to 6
    let c = ode_coefficients((rat(1, 7), rat(4, 7)), [rat(1, 9), rat(2, 9), rat(-4, 9), rat(5, 9)]);
    let op = c.operator();
    let total: Rat = [SingularPoint::Zero, SingularPoint::One, SingularPoint::Infinity]
        .iter()
        .flat_map(|p| op.indicial(*p).unwrap().roots)
        .sum();
    assert_eq!(total, rat(6, 1));
}
