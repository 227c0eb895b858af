// SPDX-License-Identifier: Apache-2.0

//! The 24-element single-qubit Clifford group, modulo global phase.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

    /// `(x, z)` bits of the Hermitian Pauli.
    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Option<Pauli> {
        match (x, z) {
            (true, false) => Some(Pauli::X),
            (true, true) => Some(Pauli::Y),
            (false, true) => Some(Pauli::Z),
            (false, false) => None,
        }
    }

    fn letter(self) -> char {
        match self {
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// Exponent `g` with `P1 P2 = i^g P3` for Hermitian single-qubit Paulis
/// given as `(x, z)` bits.
pub(crate) fn phase_exponent(x1: bool, z1: bool, x2: bool, z2: bool) -> i32 {
    let (x2, z2) = (x2 as i32, z2 as i32);
    match (x1, z1) {
        (false, false) => 0,
        (true, true) => z2 - x2,
        (true, false) => z2 * (2 * x2 - 1),
        (false, true) => x2 * (1 - 2 * z2),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPauli {
    pub negative: bool,
    pub pauli: Pauli,
}

impl SignedPauli {
    pub const fn plus(pauli: Pauli) -> Self {
        Self {
            negative: false,
            pauli,
        }
    }

    pub const fn minus(pauli: Pauli) -> Self {
        Self {
            negative: true,
            pauli,
        }
    }
}

impl fmt::Display for SignedPauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.negative { '-' } else { '+' };
        write!(f, "{sign}{}", self.pauli.letter())
    }
}

impl FromStr for SignedPauli {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut chars = s.chars();
        let negative = match chars.next() {
            Some('+') => false,
            Some('-') => true,
            _ => return Err(format!("signed Pauli must start with + or -: {s:?}")),
        };
        let pauli = match (chars.next(), chars.next()) {
            (Some('X'), None) => Pauli::X,
            (Some('Y'), None) => Pauli::Y,
            (Some('Z'), None) => Pauli::Z,
            _ => return Err(format!("bad signed Pauli {s:?}")),
        };
        Ok(Self { negative, pauli })
    }
}

/// Elementary generators; every element has a shortest word in these.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Elementary {
    H,
    S,
}

/// A single-qubit Clifford given by the images of `X` and `Z` under conjugation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clifford1Q {
    image_x: SignedPauli,
    image_z: SignedPauli,
}

impl Clifford1Q {
    pub const IDENTITY: Self = Self::raw(SignedPauli::plus(Pauli::X), SignedPauli::plus(Pauli::Z));
    pub const H: Self = Self::raw(SignedPauli::plus(Pauli::Z), SignedPauli::plus(Pauli::X));
    pub const S: Self = Self::raw(SignedPauli::plus(Pauli::Y), SignedPauli::plus(Pauli::Z));
    pub const S_DAG: Self =
        Self::raw(SignedPauli::minus(Pauli::Y), SignedPauli::plus(Pauli::Z));
    pub const X: Self = Self::raw(SignedPauli::plus(Pauli::X), SignedPauli::minus(Pauli::Z));
    pub const Y: Self = Self::raw(SignedPauli::minus(Pauli::X), SignedPauli::minus(Pauli::Z));
    pub const Z: Self = Self::raw(SignedPauli::minus(Pauli::X), SignedPauli::plus(Pauli::Z));

    const fn raw(image_x: SignedPauli, image_z: SignedPauli) -> Self {
        Self { image_x, image_z }
    }

    /// `None` unless the images anticommute, i.e. name different Paulis.
    pub fn new(image_x: SignedPauli, image_z: SignedPauli) -> Option<Self> {
        (image_x.pauli != image_z.pauli).then_some(Self { image_x, image_z })
    }

    pub fn image_x(&self) -> SignedPauli {
        self.image_x
    }

    pub fn image_z(&self) -> SignedPauli {
        self.image_z
    }

    pub fn all() -> &'static [Clifford1Q; 24] {
        static ALL: OnceLock<[Clifford1Q; 24]> = OnceLock::new();
        ALL.get_or_init(|| {
            let mut out = Vec::with_capacity(24);
            for px in Pauli::ALL {
                for sx in [false, true] {
                    for pz in Pauli::ALL.into_iter().filter(|&p| p != px) {
                        for sz in [false, true] {
                            out.push(Self::raw(
                                SignedPauli {
                                    negative: sx,
                                    pauli: px,
                                },
                                SignedPauli {
                                    negative: sz,
                                    pauli: pz,
                                },
                            ));
                        }
                    }
                }
            }
            out.try_into().unwrap()
        })
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    /// `C P C^dagger`.
    pub fn conjugate(&self, p: SignedPauli) -> SignedPauli {
        let image = match p.pauli {
            Pauli::X => self.image_x,
            Pauli::Z => self.image_z,
            Pauli::Y => {
                // Y = i X Z
                let (x1, z1) = self.image_x.pauli.bits();
                let (x2, z2) = self.image_z.pauli.bits();
                let mut e = 1 + phase_exponent(x1, z1, x2, z2);
                if self.image_x.negative != self.image_z.negative {
                    e += 2;
                }
                let e = e.rem_euclid(4);
                debug_assert!(e % 2 == 0);
                SignedPauli {
                    negative: e == 2,
                    pauli: Pauli::from_bits(x1 ^ x2, z1 ^ z2).unwrap(),
                }
            }
        };
        SignedPauli {
            negative: image.negative ^ p.negative,
            pauli: image.pauli,
        }
    }

    /// Apply `self`, then `then`.
    pub fn then(&self, then: &Clifford1Q) -> Clifford1Q {
        Self::raw(then.conjugate(self.image_x), then.conjugate(self.image_z))
    }

    pub fn inverse(&self) -> Clifford1Q {
        *Self::all()
            .iter()
            .find(|c| self.then(c).is_identity())
            .expect("group element has an inverse")
    }

    /// `C P C^dagger == +P`.
    pub fn fixes(&self, p: Pauli) -> bool {
        self.conjugate(SignedPauli::plus(p)) == SignedPauli::plus(p)
    }

    /// Action on the Bloch sphere: column `k` is the image of the `k`-th Pauli axis.
    pub fn rotation(&self) -> [[i8; 3]; 3] {
        let mut r = [[0i8; 3]; 3];
        for (k, p) in Pauli::ALL.into_iter().enumerate() {
            let img = self.conjugate(SignedPauli::plus(p));
            let row = img.pauli as usize;
            r[row][k] = if img.negative { -1 } else { 1 };
        }
        r
    }

    /// Rotation axis (unnormalized), `None` for the identity.
    pub fn axis(&self) -> Option<[i32; 3]> {
        let r = self.rotation();
        let m: Vec<[i32; 3]> = (0..3)
            .map(|i| {
                let mut row = [0i32; 3];
                for j in 0..3 {
                    row[j] = r[i][j] as i32 - (i == j) as i32;
                }
                row
            })
            .collect();
        // The axis spans the kernel of R - I; any nonzero cross product of two rows lies in it.
        for (a, b) in [(0, 1), (0, 2), (1, 2)] {
            let c = cross(m[a], m[b]);
            if c != [0, 0, 0] {
                return Some(c);
            }
        }
        // R - I has rank 2 for every nontrivial rotation
        None
    }

    /// Exact commutation of the two unitaries (phase-independent).
    pub fn commutes_with(&self, other: &Clifford1Q) -> bool {
        match (self.axis(), other.axis()) {
            (Some(a), Some(b)) => cross(a, b) == [0, 0, 0],
            _ => true,
        }
    }

    /// A shortest word in `H` and `S`, in time order.
    pub fn word(&self) -> &'static [Elementary] {
        static WORDS: OnceLock<Vec<(Clifford1Q, Vec<Elementary>)>> = OnceLock::new();
        let table = WORDS.get_or_init(|| {
            let mut seen = vec![(Clifford1Q::IDENTITY, Vec::new())];
            let mut queue = VecDeque::from([0usize]);
            while let Some(idx) = queue.pop_front() {
                let (c, w) = seen[idx].clone();
                for (g, e) in [(Clifford1Q::H, Elementary::H), (Clifford1Q::S, Elementary::S)] {
                    let next = c.then(&g);
                    if seen.iter().all(|(d, _)| *d != next) {
                        let mut nw = w.clone();
                        nw.push(e);
                        seen.push((next, nw));
                        queue.push_back(seen.len() - 1);
                    }
                }
            }
            seen
        });
        &table.iter().find(|(c, _)| c == self).expect("all 24 are reachable").1
    }
}

fn cross(a: [i32; 3], b: [i32; 3]) -> [i32; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

impl fmt::Display for Clifford1Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X:{} Z:{}", self.image_x, self.image_z)
    }
}

impl FromStr for Clifford1Q {
    type Err = String;

    /// Parses `X:<signed> Z:<signed>`, e.g. `X:+Z Z:+X`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        let [xs, zs] = parts.as_slice() else {
            return Err(format!("expected two Pauli images, got {s:?}"));
        };
        let x = xs
            .strip_prefix("X:")
            .ok_or_else(|| format!("expected X:<image>, got {xs:?}"))?
            .parse()?;
        let z = zs
            .strip_prefix("Z:")
            .ok_or_else(|| format!("expected Z:<image>, got {zs:?}"))?
            .parse()?;
        Self::new(x, z).ok_or_else(|| format!("images {x} and {z} commute"))
    }
}
