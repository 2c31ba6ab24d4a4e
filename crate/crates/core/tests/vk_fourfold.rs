//! The Voskresenskij-Klyachko fourfold: fan derived from the printed ray
//! matrix as the face fan of the convex hull of the rays, then checked
//! smooth and Fano. All downstream invariants go through this derivation.

use mukai_core::exactmath::{int_vec, Int};
use mukai_core::toric::{recognize_projective_space_product, Fan};
use num_traits::One;

pub fn vk_rays() -> Vec<Vec<Int>> {
    vec![
        int_vec(&[1, 0, 0, 0]),
        int_vec(&[-1, 0, 0, 0]),
        int_vec(&[0, 1, 0, 0]),
        int_vec(&[0, -1, 0, 0]),
        int_vec(&[0, 0, 1, 0]),
        int_vec(&[0, 0, -1, 0]),
        int_vec(&[0, 0, 0, 1]),
        int_vec(&[0, 0, 0, -1]),
        int_vec(&[1, 1, 1, 1]),
        int_vec(&[-1, -1, -1, -1]),
    ]
}

fn vk_fan() -> Fan {
    Fan::face_fan(4, vk_rays()).expect("VK rays span a reflexive polytope")
}

#[test]
fn vk_fan_is_smooth_complete_fano() {
    let fan = vk_fan();
    assert_eq!(fan.rays().len(), 10);
    assert!(fan.is_complete());
    assert!(fan.is_q_factorial());
    assert!(fan.is_smooth());
    assert!(fan.anticanonical().is_cartier(), "Gorenstein");
    assert!(fan.is_fano().unwrap());
}

#[test]
fn vk_fan_shape() {
    let fan = vk_fan();
    // Derived, then frozen: 30 simplicial maximal cones and 60 walls.
    assert_eq!(fan.max_cones().len(), 30);
    assert!(fan.max_cones().iter().all(|c| c.len() == 4));
    assert_eq!(fan.walls().unwrap().len(), 60);
}

#[test]
fn vk_class_and_picard_rank_six() {
    let fan = vk_fan();
    assert_eq!(fan.class_group().unwrap().free_rank, 6);
    assert_eq!(fan.picard_rank().unwrap(), 6);
}

#[test]
fn vk_nef_cone_has_twelve_extreme_rays() {
    let fan = vk_fan();
    let nef = fan.nef_cone().unwrap();
    assert_eq!(nef.cone.minimal_generators().len(), 12);
    // -K is an interior Cartier class.
    let lattice = fan.class_lattice().unwrap();
    let kappa = lattice.class_of_divisor(&vec![Int::one(); 10]).unwrap();
    assert!(nef.cone.contains_int(&kappa));
}

#[test]
fn vk_is_not_a_product_of_projective_spaces() {
    let fan = vk_fan();
    assert_eq!(recognize_projective_space_product(&fan).unwrap(), None);
}

#[test]
fn vk_total_index_values() {
    use mukai_core::exactmath::{rat, ratio, Rat};
    use mukai_core::nefindex::{class_polytope, mukai_type_margin, tau_q, tau_z};

    let fan = vk_fan();
    let data = class_polytope(&fan).unwrap();
    // 12 nef extreme ray generators plus -K itself.
    assert_eq!(data.p_x.len(), 13);
    assert!(data.p_x.contains(&data.anticanonical_class));
    let nef_rays: Vec<Vec<Int>> = data.nef_cone.minimal_generators().to_vec();
    for r in &nef_rays {
        assert!(data.p_x.contains(r), "nef generator {r:?} must be a class in P_X");
    }

    let tz = tau_z(&data).unwrap();
    assert_eq!(tz.value, 2);
    assert_eq!(tz.two_part_partitions, 6);
    assert!(!tz.has_three_or_more_parts);

    let tq = tau_q(&data).unwrap();
    assert_eq!(tq, ratio(5, 2));
    assert!(tq >= rat(tz.value as i64));

    let partition = mukai_core::nefindex::tau_q_partition(&data).unwrap();
    assert!(partition.verify(&data));
    assert_eq!(partition.coefficient_sum(), ratio(5, 2));

    // -K equals one half of the sum of five distinct elements of P_X.
    let kappa_doubled: Vec<Int> = data.anticanonical_class.iter().map(|x| x * 2).collect();
    let mut found = false;
    let n = data.p_x.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    for e in d + 1..n {
                        let mut sum = vec![Int::from(0); data.class_rank];
                        for &i in &[a, b, c, d, e] {
                            for (s, x) in sum.iter_mut().zip(&data.p_x[i]) {
                                *s += x;
                            }
                        }
                        if sum == kappa_doubled {
                            found = true;
                        }
                    }
                }
            }
        }
    }
    assert!(found, "five distinct classes with coefficient 1/2 must sum to -K");

    // dim + rho - tau_Q = 4 + 6 - 5/2.
    let margin = mukai_type_margin(&fan, &data, &tq).unwrap();
    assert_eq!(margin.margin, ratio(15, 2));
    assert!(!margin.equality);
    let _: &Rat = &margin.margin;
}

#[test]
fn vk_no_ray_partition_looks_like_a_product() {
    // Exhaustive oracle behind the recognizer's None: over ALL set
    // partitions of the ten rays, no partition satisfies even the
    // per-block product conditions (each block sums to zero and has one
    // more ray than its rank) together with the rank budget
    // sum(|B| - 1) = 4.
    use mukai_core::exactmath::{rank, IntMatrix};
    use num_traits::Zero;

    let rays = vk_rays();
    let n = rays.len();
    // Restricted-growth enumeration of set partitions.
    let mut assignment = vec![0usize; n];
    let mut found_valid = false;
    fn enumerate(
        i: usize,
        max_block: usize,
        assignment: &mut Vec<usize>,
        rays: &Vec<Vec<Int>>,
        found: &mut bool,
    ) {
        if *found {
            return;
        }
        if i == rays.len() {
            let block_count = max_block + 1;
            let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); block_count];
            for (e, &b) in assignment.iter().enumerate() {
                blocks[b].push(e);
            }
            let mut rank_budget = 0usize;
            for block in &blocks {
                let mut sum = vec![Int::from(0); 4];
                for &e in block {
                    for (s, x) in sum.iter_mut().zip(&rays[e]) {
                        *s += x;
                    }
                }
                if !sum.iter().all(Zero::is_zero) {
                    return;
                }
                let m = IntMatrix::from_rows(
                    &block.iter().map(|&e| rays[e].clone()).collect::<Vec<_>>(),
                );
                let r = rank(&m);
                if block.len() != r + 1 {
                    return;
                }
                rank_budget += r;
            }
            if rank_budget == 4 {
                *found = true;
            }
            return;
        }
        for b in 0..=max_block + 1 {
            assignment[i] = b;
            enumerate(i + 1, max_block.max(b), assignment, rays, found);
        }
        assignment[i] = 0;
    }
    enumerate(1, 0, &mut assignment, &rays, &mut found_valid);
    assert!(!found_valid, "some ray partition satisfies the product conditions");
}
