use fig8_plan::planner::circles_of;
use fig8_plan::retraction::on_spine;
use fig8_plan::spine::{ChainCircle, ChainPoint, ChainVertex};
use fig8_plan::{plan, Configuration, InstructionDomain};

fn cfg(r1: &str, r2: &str) -> Configuration {
    Configuration::new(r1.parse().unwrap(), r2.parse().unwrap()).unwrap()
}

#[test]
fn both_robots_on_one_circle() {
    let i = cfg("A:0.1", "A:0.3");
    let f = cfg("B:0.6", "A:0.2");
    let p = plan(&i, &f).unwrap();
    p.validate().unwrap();
    assert!(matches!(p.start_spine, ChainPoint::Interior { circle: ChainCircle::R, .. }));
    // the first trace only separates the robots, both stay on circle A
    for w in p.trace_in.waypoints() {
        assert!(w.config.r1().circle() == fig8_plan::Circle::A || w.config.r1().is_center());
        assert_eq!(w.config.r2().circle(), fig8_plan::Circle::A);
    }
    assert!((p.trace_in.end().separation() - 0.5).abs() < 1e-12);
}

#[test]
fn robots_on_different_circles() {
    let i = cfg("A:0.25", "B:0.25");
    let f = cfg("A:0.75", "B:0.75");
    let p = plan(&i, &f).unwrap();
    p.validate().unwrap();
    // the start retracts onto the cross center: both reach their poles together
    assert_eq!(p.start_spine, ChainPoint::Vertex(ChainVertex::C1));
    assert_eq!(p.end_spine, ChainPoint::Vertex(ChainVertex::C1));
    assert_eq!(p.domain, InstructionDomain::U3);
    assert_eq!(p.hop_count, 0);
}

#[test]
fn cross_center_to_cross_center() {
    let i = cfg("A:0.5", "B:0.5");
    let f = cfg("B:0.5", "A:0.5");
    let p = plan(&i, &f).unwrap();
    p.validate().unwrap();
    assert_eq!(p.domain, InstructionDomain::U3);
    assert_eq!(circles_of(&p.chain_path), vec![ChainCircle::H1, ChainCircle::Bc, ChainCircle::V2]);
    assert_eq!(p.chain_length(), 1.5);
    for k in 0..=40 {
        let c = p.full_path.at(k as f64 / 40.0).unwrap();
        assert!(on_spine(&c.to_flat(), 1e-12), "{c}");
    }
}

#[test]
fn generic_pair_uses_first_instruction() {
    let p = plan(&cfg("A:0.1", "B:0.3"), &cfg("B:0.7", "B:0.05")).unwrap();
    p.validate().unwrap();
    assert_eq!(p.domain, InstructionDomain::U1);
    assert!(p.hop_count >= 1 && p.hop_count <= 7);
}

#[test]
fn center_start() {
    let p = plan(&cfg("A:0", "B:0.3"), &cfg("A:0.4", "A:0.9")).unwrap();
    p.validate().unwrap();
    assert_eq!(p.start_spine, ChainPoint::Vertex(ChainVertex::HB));
    assert!(p.trace_in.waypoints().iter().all(|w| w.config.r1().is_center()));
}

#[test]
fn every_vertex_pair() {
    let mut worst = 0;
    for a in ChainVertex::ALL {
        for b in ChainVertex::ALL {
            let (i, f) = (a.flat().to_config().unwrap(), b.flat().to_config().unwrap());
            let p = plan(&i, &f).unwrap();
            p.validate().unwrap();
            assert_eq!(p.domain, InstructionDomain::U3);
            assert_eq!(p.hop_count == 0, a == b);
            worst = worst.max(p.hop_count);
        }
    }
    assert_eq!(worst, 5);
}
