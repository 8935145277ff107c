mod common;

use common::{bundled_scenes, march, random_point, random_pose, random_scene};
use housesim::grid::Vec2;
use housesim::sensors::raycast::Terminal;
use housesim::sensors::{cast_ray, ray_direction, ray_origin, RayLimits, SensorConfig, SensorMode};
use housesim::Material;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn terminal(t: &Terminal) -> Option<(Material, housesim::Edge)> {
    match t {
        Terminal::Surface { material, edge } => Some((*material, *edge)),
        Terminal::MaxRange => None,
    }
}

#[test]
fn cast_ray_matches_marching_oracle_on_random_rays() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let (mut reflected, mut checked) = (0, 0);
    while checked < 10_000 {
        let scene = random_scene(&mut rng, 0.3);
        for _ in 0..50 {
            let origin = random_point(&scene, &mut rng);
            let dir = Vec2::from_bearing(rng.random_range(0.0..360.0));
            let mode = [SensorMode::Vision, SensorMode::Vision, SensorMode::Depth, SensorMode::GroundTruth]
                [rng.random_range(0..4)];
            let limits = RayLimits { max_range: rng.random_range(2.0..14.0), reflection_cap: rng.random_range(0..4) };
            let hit = cast_ray(&scene, origin, dir, mode, limits);
            let o = march(&scene, origin, dir, mode, limits.max_range, limits.reflection_cap);
            assert!(
                (hit.path_length - o.length).abs() < 1e-6,
                "{mode:?} from {origin:?} dir {dir:?}: {} vs oracle {}",
                hit.path_length,
                o.length
            );
            assert_eq!(terminal(&hit.terminal), o.terminal, "{mode:?} from {origin:?} dir {dir:?}");
            assert_eq!(hit.reflected, o.reflections > 0);
            reflected += hit.reflected as usize;
            checked += 1;
        }
    }
    assert!(reflected >= 500, "only {reflected} reflected rays");
}

#[test]
fn sensor_fans_match_oracle_on_bundled_scenes() {
    let cfg = SensorConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (name, scene) in bundled_scenes() {
        for _ in 0..40 {
            let pose = random_pose(&scene, &mut rng);
            for b in cfg.bearings() {
                let dir = ray_direction(&pose, b);
                for mode in [SensorMode::Vision, SensorMode::Depth, SensorMode::GroundTruth] {
                    let hit = cast_ray(&scene, ray_origin(&pose), dir, mode, cfg.limits());
                    let o = march(&scene, ray_origin(&pose), dir, mode, cfg.max_range, cfg.reflection_cap);
                    assert!((hit.path_length - o.length).abs() < 1e-6, "{name} {pose} {b} {mode:?}");
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn channel_ranges_are_ordered(seed in any::<u64>(), bearing in 0.0..360.0f64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let scene = random_scene(&mut rng, 0.3);
        let origin = random_point(&scene, &mut rng);
        let dir = Vec2::from_bearing(bearing);
        let l = RayLimits::default();
        let v = cast_ray(&scene, origin, dir, SensorMode::Vision, l);
        let d = cast_ray(&scene, origin, dir, SensorMode::Depth, l);
        let g = cast_ray(&scene, origin, dir, SensorMode::GroundTruth, l);
        // depth follows vision up to the first mirror; ground truth stops no later
        prop_assert!((d.path_length - v.unreflected_length()).abs() < 1e-9);
        prop_assert!(g.path_length <= d.path_length + 1e-12);
        prop_assert!(v.path_length >= d.path_length - 1e-12);
        prop_assert!(v.path_length <= l.max_range + 1e-12);
    }

    #[test]
    fn segments_tile_the_path(seed in any::<u64>(), bearing in 0.0..360.0f64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let scene = random_scene(&mut rng, 0.3);
        let origin = random_point(&scene, &mut rng);
        let hit = cast_ray(&scene, origin, Vec2::from_bearing(bearing), SensorMode::Vision, RayLimits::default());
        let mut at = 0.0;
        for s in &hit.segments {
            prop_assert!((s.enter - at).abs() < 1e-9);
            prop_assert!(s.exit >= s.enter);
            prop_assert!(scene.in_bounds(s.cell));
            at = s.exit;
        }
        prop_assert!((at - hit.path_length).abs() < 1e-9);
    }
}
