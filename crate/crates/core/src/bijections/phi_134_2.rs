use super::{rebuild, MapError};
use crate::generate::{Composition, Matching};
use crate::partition::SetPartition;

/// Splits a `134/2`-avoider with `k >= 1` non-singleton blocks into the
/// composition of excess block sizes and the standardized min/max skeleton.
pub fn phi_134_2(pi: &SetPartition) -> Result<(Composition, Matching), MapError> {
    let mut parts = Vec::new();
    let mut skeleton = Vec::with_capacity(pi.block_count());
    for b in pi.blocks() {
        if b.len() == 1 {
            skeleton.push(b.clone());
            continue;
        }
        if b[..b.len() - 1].windows(2).any(|w| w[1] != w[0] + 1) {
            return Err(MapError::PreconditionViolated(format!(
                "block {:?} is not an interval plus one larger element",
                b
            )));
        }
        parts.push(b.len() - 2);
        skeleton.push(vec![b[0], b[b.len() - 1]]);
    }
    if parts.is_empty() {
        return Err(MapError::KZero);
    }
    let sigma = SetPartition::standardize(skeleton).expect("subset of a partition");
    let matching = Matching::new(sigma).expect("blocks of size at most two");
    Ok((Composition::new(parts), matching))
}

/// Re-expands each doubleton of `sigma` by `lambda_j` values directly above its minimum.
pub fn phi_134_2_inverse(lambda: &Composition, sigma: &Matching) -> Result<SetPartition, MapError> {
    if lambda.parts().len() != sigma.doubletons() {
        return Err(MapError::PreconditionViolated(format!(
            "{} parts for {} doubletons",
            lambda.parts().len(),
            sigma.doubletons()
        )));
    }
    let p = sigma.partition();
    let mut extra = vec![0; p.block_count()];
    let mut it = lambda.parts().iter();
    for (j, b) in p.blocks().iter().enumerate() {
        if b.len() == 2 {
            extra[j] = *it.next().expect("one part per doubleton");
        }
    }
    let mut blocks = vec![Vec::new(); p.block_count()];
    let mut v = 0;
    for x in 1..=p.n() {
        let j = p.block_of(x).expect("element of [n]");
        v += 1;
        blocks[j].push(v);
        if blocks[j].len() == 1 {
            for _ in 0..extra[j] {
                v += 1;
                blocks[j].push(v);
            }
        }
    }
    Ok(rebuild(v, blocks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::avoidance::avoiders;

    fn p(s: &str) -> SetPartition {
        s.parse().unwrap()
    }

    #[test]
    fn worked_example() {
        let pi = p("1 2 7/3/4 5 6 8/9/10 11 12");
        let (lambda, sigma) = phi_134_2(&pi).unwrap();
        assert_eq!(lambda.parts(), &[1, 2, 1]);
        assert_eq!(sigma.partition(), &p("14/2/35/6/78"));
        assert_eq!(phi_134_2_inverse(&lambda, &sigma).unwrap(), pi);
    }

    #[test]
    fn errors() {
        assert_eq!(
            phi_134_2(&SetPartition::singletons(4)),
            Err(MapError::KZero)
        );
        assert!(matches!(
            phi_134_2(&p("134/2")),
            Err(MapError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn round_trip() {
        for n in 2..=8 {
            for pi in avoiders(n, &p("134/2")) {
                if pi.block_count() == n {
                    continue;
                }
                let (l, s) = phi_134_2(&pi).unwrap();
                assert_eq!(phi_134_2_inverse(&l, &s).unwrap(), pi);
            }
        }
    }
}
