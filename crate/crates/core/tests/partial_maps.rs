use proptest::prelude::*;
use transemi::{PartialMap, SubsetA};

const N: usize = 5;

fn map() -> impl Strategy<Value = PartialMap> {
    prop::collection::vec(prop::option::of(0..N), N)
        .prop_map(|entries| PartialMap::from_entries(entries).unwrap())
}

fn subset() -> impl Strategy<Value = SubsetA> {
    prop::collection::vec(any::<bool>(), N).prop_map(|bits| {
        SubsetA::from_members(N, (0..N).filter(|&i| bits[i])).unwrap()
    })
}

proptest! {
    #[test]
    fn composition_is_associative(f in map(), g in map(), h in map()) {
        let left = f.compose(&g).unwrap().compose(&h).unwrap();
        let right = f.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn intersection_is_a_semilattice(f in map(), g in map(), h in map()) {
        prop_assert_eq!(f.intersect(&f).unwrap(), f.clone());
        prop_assert_eq!(f.intersect(&g).unwrap(), g.intersect(&f).unwrap());
        prop_assert_eq!(
            f.intersect(&g).unwrap().intersect(&h).unwrap(),
            f.intersect(&g.intersect(&h).unwrap()).unwrap()
        );
        prop_assert!(f.intersect(&g).unwrap().is_subset(&f));
    }

    #[test]
    fn composition_distributes_over_intersection_on_the_left(f in map(), g in map(), h in map()) {
        // (g ∩ h) ∘ f = (g ∘ f) ∩ (h ∘ f)
        let left = g.intersect(&h).unwrap().compose(&f).unwrap();
        let right = g.compose(&f).unwrap().intersect(&h.compose(&f).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn diagonal_identities(f in map(), x in subset(), y in subset()) {
        let dx = PartialMap::identity_on(&x);
        let dy = PartialMap::identity_on(&y);
        prop_assert_eq!(dx.compose(&dy).unwrap(), PartialMap::identity_on(&x.intersection(&y)));
        prop_assert_eq!(f.compose(&dx).unwrap(), f.restrict(&x));
        prop_assert!(f.restrict(&x).is_subset(&f));
        prop_assert_eq!(f.compose(&PartialMap::identity(N)).unwrap(), f.clone());
        prop_assert_eq!(f.compose(&PartialMap::identity_on(&f.domain())).unwrap(), f.clone());
    }

    #[test]
    fn relations_match_their_definitions(f in map(), g in map()) {
        let semicompatible = f.restrict(&g.domain()) == g.restrict(&f.domain());
        prop_assert_eq!(f.is_semicompatible(&g), semicompatible);
        prop_assert_eq!(f.is_semiadjacent(&g), f.image().is_subset(&g.domain()));
        // semiadjacency is the domain criterion: pr f ⊆ pr(g ∘ f)
        prop_assert_eq!(f.is_semiadjacent(&g), f.domain().is_subset(&g.compose(&f).unwrap().domain()));
        prop_assert!(f.is_semicompatible(&f));
        prop_assert_eq!(f.is_semicompatible(&g), g.is_semicompatible(&f));
    }

    #[test]
    fn union_exists_exactly_for_semicompatible_maps(f in map(), g in map()) {
        let union = f.union(&g).unwrap();
        prop_assert_eq!(union.is_some(), f.is_semicompatible(&g));
        if let Some(u) = union {
            prop_assert!(f.is_subset(&u) && g.is_subset(&u));
            prop_assert_eq!(u.len(), f.domain().bits().union(g.domain().bits()).count());
        }
    }

    #[test]
    fn pair_list_round_trip(f in map()) {
        let pairs: Vec<_> = f.pairs().collect();
        prop_assert_eq!(PartialMap::from_pairs(N, &pairs).unwrap(), f);
    }
}

#[test]
fn carrier_mismatch_is_an_error() {
    let a = PartialMap::identity(2);
    let b = PartialMap::identity(3);
    assert!(a.compose(&b).is_err());
    assert!(a.intersect(&b).is_err());
}
