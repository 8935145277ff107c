mod common;

use std::collections::BTreeSet;

use common::{bundled_scenes, random_pose, random_scene};
use housesim::env::World;
use housesim::seed::DetectionDraws;
use housesim::sensors::raycast::{Outcome, Terminal};
use housesim::sensors::{
    candidate_visible, cast_ray, ray_direction, ray_origin, sense_depth, sense_gt_depth, sense_vision, SensorConfig,
    SensorMode,
};
use housesim::{Action, Material};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ids(
    scene: &housesim::Scene,
    pose: &housesim::AgentPose,
    cfg: &SensorConfig,
    d: DetectionDraws,
) -> BTreeSet<(String, bool)> {
    sense_vision(scene, pose, cfg, d).into_iter().map(|x| (x.source_id, x.phantom)).collect()
}

#[test]
fn glass_and_mirror_interactions_per_channel() {
    let cfg = SensorConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let scenes = bundled_scenes();
    let (mut glass_seen, mut mirror_seen) = (0, 0);
    for i in 0..1000 {
        let (name, scene) = &scenes[i % scenes.len()];
        let pose = random_pose(scene, &mut rng);
        for b in cfg.bearings() {
            let dir = ray_direction(&pose, b);
            let hit = |m| cast_ray(scene, ray_origin(&pose), dir, m, cfg.limits());
            let (v, d, g) = (hit(SensorMode::Vision), hit(SensorMode::Depth), hit(SensorMode::GroundTruth));
            for h in [&v, &d] {
                assert!(!matches!(h.terminal, Terminal::Surface { material: Material::Glass, .. }), "{name} {pose}");
                for e in h.events.iter().filter(|e| e.material == Material::Glass) {
                    assert_eq!(e.outcome, Outcome::Passed);
                    glass_seen += 1;
                }
            }
            for e in g.events.iter() {
                assert_eq!(e.outcome, Outcome::Stopped, "{name} {pose}");
            }
            // ground truth stops at the first glass edge depth passed
            if let Some(first) = d.events.iter().find(|e| e.material == Material::Glass) {
                assert!(g.path_length <= first.at + 1e-12);
            }
            for e in d.events.iter().filter(|e| e.material == Material::Mirror) {
                assert_eq!(e.outcome, Outcome::Stopped);
            }
            let mut refl = 0;
            for e in v.events.iter().filter(|e| e.material == Material::Mirror) {
                mirror_seen += 1;
                if refl < cfg.reflection_cap {
                    assert_eq!(e.outcome, Outcome::Reflected, "{name} {pose} {b}");
                    refl += 1;
                } else {
                    assert_eq!(e.outcome, Outcome::Stopped);
                }
            }
        }
    }
    assert!(glass_seen > 0 && mirror_seen > 0, "poses never met glass ({glass_seen}) or mirror ({mirror_seen})");
}

#[test]
fn light_never_changes_depth_or_bumps() {
    let cfg = SensorConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let scenes = bundled_scenes();
    for i in 0..1000 {
        let (_, base) = &scenes[i % scenes.len()];
        let pose = random_pose(base, &mut rng);
        let mut other = base.clone();
        other.light_level = rng.random_range(0.0..=1.0);
        assert_eq!(sense_depth(base, &pose, &cfg), sense_depth(&other, &pose, &cfg));
        assert_eq!(sense_gt_depth(base, &pose, &cfg), sense_gt_depth(&other, &pose, &cfg));
        let mut a = World::new(base.clone(), pose);
        let mut b = World::new(other, pose);
        assert_eq!(a.execute(&Action::MoveAhead), b.execute(&Action::MoveAhead));
    }
}

#[test]
fn dim_light_extremes_and_monotonicity() {
    let cfg = SensorConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let scenes = bundled_scenes();
    let mut nonempty = 0;
    for i in 0..1000 {
        let (_, base) = &scenes[i % scenes.len()];
        let pose = random_pose(base, &mut rng);
        let draws = DetectionDraws::new(rng.random(), rng.random_range(0..500));
        let at = |l: f64| {
            let mut s = base.clone();
            s.light_level = l;
            s
        };
        assert!(sense_vision(&at(0.0), &pose, &cfg, draws).is_empty());
        let visible: BTreeSet<String> = candidate_visible(base, &pose, &cfg).into_iter().collect();
        nonempty += !visible.is_empty() as usize;
        for l in [cfg.light_floor, 0.5, 1.0] {
            let got: BTreeSet<String> =
                sense_vision(&at(l), &pose, &cfg, draws).into_iter().map(|d| d.source_id).collect();
            assert_eq!(got, visible);
        }
        let (x, y): (f64, f64) = (rng.random(), rng.random());
        let (lo, hi) = (x.min(y), x.max(y));
        assert!(ids(&at(lo), &pose, &cfg, draws).is_subset(&ids(&at(hi), &pose, &cfg, draws)));
    }
    assert!(nonempty > 100);
}

proptest! {
    #[test]
    fn detections_shrink_with_light_on_random_scenes(seed in any::<u64>(), a in 0.0..=1.0f64, b in 0.0..=1.0f64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut s = random_scene(&mut rng, 0.2);
        let pose = random_pose(&s, &mut rng);
        let cfg = SensorConfig::default();
        let draws = DetectionDraws::new(seed, 0);
        s.light_level = a.min(b);
        let dim = ids(&s, &pose, &cfg, draws);
        s.light_level = a.max(b);
        let bright = ids(&s, &pose, &cfg, draws);
        prop_assert!(dim.is_subset(&bright));
    }
}
