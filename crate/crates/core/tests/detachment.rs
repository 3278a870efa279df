// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

mod common;

use amalgam::engine::{detach_all_observed, detach_step};
use amalgam::gen::{random_detachment_instance, rng_for, InstanceLimits};
use amalgam::verify::{assert_step_relations, check_partial_detachment};
use amalgam::{detach_all, verify_detachment, AmalgamationSpec, ColoredMultigraph, Error};
use common::*;
use proptest::prelude::*;

fn stress_count() -> u64 {
    std::env::var("AMALGAM_STRESS")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(300)
}

#[test]
fn random_instances_pass_both_checkers() {
    let limits = InstanceLimits::default();
    for i in 0..stress_count() {
        let (h, eta) = random_detachment_instance(&mut rng_for(91, i), &limits);
        let d = detach_all(&h, &eta).unwrap_or_else(|e| panic!("instance {i}: {e}"));
        let report = verify_detachment(&h, &eta, &d.map, &d.graph).unwrap();
        assert!(report.passed(), "instance {i}:\n{report}");
        let psi: Vec<usize> = d.map.table().iter().map(|x| x.0).collect();
        if let Err(e) = check_detachment(&h, eta.values(), &psi, &d.graph) {
            panic!("instance {i}: {e}");
        }
    }
}

#[test]
fn larger_instances() {
    let limits = InstanceLimits {
        max_vertices: 8,
        max_eta: 6,
        max_colors: 6,
        max_mult: 12,
        max_loops: 16,
    };
    for i in 0..60 {
        let (h, eta) = random_detachment_instance(&mut rng_for(92, i), &limits);
        let d = detach_all(&h, &eta).unwrap_or_else(|e| panic!("instance {i}: {e}"));
        let psi: Vec<usize> = d.map.table().iter().map(|x| x.0).collect();
        if let Err(e) = check_detachment(&h, eta.values(), &psi, &d.graph) {
            panic!("instance {i}: {e}");
        }
    }
}

#[test]
fn intermediate_graphs_keep_proportions() {
    let limits = InstanceLimits::default();
    for i in 0..150 {
        let (h, eta) = random_detachment_instance(&mut rng_for(93, i), &limits);
        let mut steps = 0;
        detach_all_observed(&h, &eta, |view| {
            assert_step_relations(view.before, view.after, view.step.y, view.step.new_vertex, view.eta_before)
                .map_err(|w| Error::Internal(w.to_string()))?;
            check_partial_detachment(&h, &eta, view.after, view.eta_after, view.map)
                .map_err(|w| Error::Internal(w.to_string()))?;
            steps += 1;
            Ok(())
        })
        .unwrap_or_else(|e| panic!("instance {i}: {e}"));
        assert_eq!(steps as u64, eta.steps());
    }
}

#[test]
fn single_vertex_loops_detach_to_complete_graph() {
    // λK_n amalgamated: one vertex, n loops in each of λ(n−1)/2 colors
    for (n, lambda) in [(5usize, 1u64), (4, 2), (7, 3)] {
        let k = (lambda as usize * (n - 1)) / 2;
        let mut h = ColoredMultigraph::new(1, k);
        for j in 0..k {
            h.layer_mut(j).add_loops(v(0), n as u64);
        }
        let eta = AmalgamationSpec::new(vec![n as u64]).unwrap();
        let d = detach_all(&h, &eta).unwrap();
        assert_eq!(d.graph.underlying(), complete(n, lambda));
        for j in 0..k {
            let layer = d.graph.layer(j);
            assert!(layer.degrees().iter().all(|&x| x == 2));
            assert_eq!(layer.component_count(), 1);
        }
    }
}

#[test]
fn eta_guard_is_enforced() {
    let mut h = ColoredMultigraph::new(2, 1);
    h.layer_mut(0).add_loops(v(1), 1);
    let eta = AmalgamationSpec::new(vec![2, 1]).unwrap();
    assert!(matches!(detach_all(&h, &eta), Err(Error::EtaGuard { vertex, .. }) if vertex == v(1)));
    assert!(matches!(detach_step(&h, &eta, v(1)), Err(Error::EtaTooSmall { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn detachment_holds_for_any_seed(seed in any::<u64>(), index in 0u64..1000) {
        let (h, eta) = random_detachment_instance(&mut rng_for(seed, index), &InstanceLimits::default());
        let d = detach_all(&h, &eta).unwrap();
        let psi: Vec<usize> = d.map.table().iter().map(|x| x.0).collect();
        prop_assert_eq!(check_detachment(&h, eta.values(), &psi, &d.graph), Ok(()));
        prop_assert_eq!(d.graph.vertex_count() as u64, eta.values().iter().sum::<u64>());
    }
}
