use feelab::analysis::{il_curve, required_zero_il_phi};
use feelab::{
    impermanent_loss, swap_continuous, ConstantFee, EngineConfig, LinearFee, PoolState, ZeroIlFee,
};
use proptest::prelude::*;

fn dense_alphas() -> Vec<f64> {
    let mut alphas: Vec<f64> = (1..=100).map(|i| i as f64 / 100.0).collect();
    alphas.extend([2.0, 5.0, 10.0]);
    alphas
}

#[test]
fn zero_il_rule_removes_loss_at_its_reference() {
    let pool = PoolState::new(100.0, 100.0).unwrap();
    let cfg = EngineConfig::continuous(ZeroIlFee::new(1e4).unwrap()).unwrap();
    let table = il_curve(&pool, &cfg, &dense_alphas()).unwrap();
    let v_hold = table.column("v_hold").unwrap();
    for (il, hold) in table.column("il_abs").unwrap().iter().zip(v_hold) {
        assert!(il.abs() <= 1e-9 * hold, "{il} vs {hold}");
    }
}

#[test]
fn fee_free_loss_matches_closed_form() {
    let fee = ConstantFee::new(0.0).unwrap();
    for (x0, y0) in [(100.0, 100.0), (50.0, 400.0), (1e3, 2.5)] {
        let pool = PoolState::new(x0, y0).unwrap();
        for alpha in dense_alphas() {
            let dx = alpha * x0;
            let out = swap_continuous(&pool, &fee, dx).unwrap();
            let il = impermanent_loss(&pool, &out).il_abs;
            let x_f = x0 + dx;
            let oracle = -x0 * y0 * dx * dx / (x0 * x_f * x_f);
            assert!(
                (il - oracle).abs() <= 1e-10 * oracle.abs(),
                "{il} vs {oracle}"
            );
        }
    }
}

#[test]
fn fees_reduce_loss() {
    let pool = PoolState::new(100.0, 100.0).unwrap();
    let alphas = [0.05, 0.1, 0.5];
    let none = EngineConfig::continuous(ConstantFee::new(0.0).unwrap()).unwrap();
    let linear = EngineConfig::continuous(LinearFee::new(0.003, 1e4).unwrap()).unwrap();
    let a = il_curve(&pool, &none, &alphas)
        .unwrap()
        .column("il_rel")
        .unwrap();
    let b = il_curve(&pool, &linear, &alphas)
        .unwrap()
        .column("il_rel")
        .unwrap();
    for (plain, with_fee) in a.iter().zip(&b) {
        assert!(with_fee > plain);
        assert!(*with_fee < 0.0);
    }
}

#[test]
fn required_phi_is_strictly_decreasing_in_reference() {
    let k_star = 10100.0;
    let values: Vec<f64> = (0..50)
        .map(|i| {
            let k0 = k_star * (0.5 + 0.49 * i as f64 / 49.0);
            required_zero_il_phi(k_star, k0).unwrap()
        })
        .collect();
    assert!(values.windows(2).all(|w| w[1] < w[0]));
}

proptest! {
    #[test]
    fn zero_il_holds_for_asymmetric_pools(
        x0 in 1.0f64..1e4,
        y0 in 1.0f64..1e4,
        alpha in 1e-4f64..10.0,
    ) {
        let pool = PoolState::new(x0, y0).unwrap();
        let fee = ZeroIlFee::new(pool.invariant()).unwrap();
        let out = swap_continuous(&pool, &fee, alpha * x0).unwrap();
        let report = impermanent_loss(&pool, &out);
        prop_assert!(report.il_abs.abs() <= 1e-9 * report.v_hold);
    }
}
