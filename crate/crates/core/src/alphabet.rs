//! Finite alphabets and the symbol sequences drawn from them.

use crate::error::{Error, Result};

/// A symbol is an index into its alphabet, `0..size`.
pub type Symbol = usize;

/// A finite alphabet `{0, 1, ..., size - 1}` with at least two symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alphabet {
    size: usize,
}

impl Alphabet {
    pub fn new(size: usize) -> Result<Self> {
        if size < 2 {
            return Err(Error::DegenerateAlphabet(size));
        }
        Ok(Self { size })
    }

    pub const fn binary() -> Self {
        Self { size: 2 }
    }

    pub const fn ternary() -> Self {
        Self { size: 3 }
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn contains(&self, symbol: Symbol) -> bool {
        symbol < self.size
    }

    pub fn check(&self, symbol: Symbol) -> Result<()> {
        if self.contains(symbol) {
            Ok(())
        } else {
            Err(Error::SymbolOutOfRange {
                symbol,
                size: self.size,
            })
        }
    }

    /// Alphabet of `(x, y)` super symbols.
    pub fn product(&self, other: &Alphabet) -> Alphabet {
        Alphabet {
            size: self.size * other.size,
        }
    }
}

/// A finite-alphabet time series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolSequence {
    alphabet: Alphabet,
    data: Vec<Symbol>,
}

impl SymbolSequence {
    pub fn new(alphabet: Alphabet, data: Vec<Symbol>) -> Result<Self> {
        if let Some(&bad) = data.iter().find(|&&s| !alphabet.contains(s)) {
            return Err(Error::SymbolOutOfRange {
                symbol: bad,
                size: alphabet.size(),
            });
        }
        Ok(Self { alphabet, data })
    }

    /// Builds a sequence over the smallest alphabet that holds every symbol,
    /// never smaller than binary.
    pub fn infer(data: Vec<Symbol>) -> Self {
        let size = data.iter().copied().max().map_or(2, |m| (m + 1).max(2));
        Self {
            alphabet: Alphabet { size },
            data,
        }
    }

    pub fn binary(data: Vec<Symbol>) -> Result<Self> {
        Self::new(Alphabet::binary(), data)
    }

    #[inline]
    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.data.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    pub fn as_slice(&self) -> &[Symbol] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<Symbol> {
        self.data
    }

    #[inline]
    pub fn get(&self, i: usize) -> Option<Symbol> {
        self.data.get(i).copied()
    }

    /// Contiguous subsequence `[start, end)` over the same alphabet.
    pub fn slice(&self, start: usize, end: usize) -> SymbolSequence {
        SymbolSequence {
            alphabet: self.alphabet,
            data: self.data[start..end].to_vec(),
        }
    }

    /// Same data viewed over a larger alphabet.
    pub fn widen(&self, alphabet: Alphabet) -> Result<SymbolSequence> {
        if alphabet.size() < self.alphabet.size() {
            return Err(Error::AlphabetMismatch {
                expected: self.alphabet.size(),
                actual: alphabet.size(),
            });
        }
        Ok(SymbolSequence {
            alphabet,
            data: self.data.clone(),
        })
    }
}

/// Combines two aligned sequences into super symbols `z_i = x_i * |Y| + y_i`.
pub fn pair_symbols(x: &SymbolSequence, y: &SymbolSequence) -> Result<SymbolSequence> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    let ysize = y.alphabet().size();
    let data = x
        .as_slice()
        .iter()
        .zip(y.as_slice())
        .map(|(&a, &b)| a * ysize + b)
        .collect();
    Ok(SymbolSequence {
        alphabet: x.alphabet().product(&y.alphabet()),
        data,
    })
}

/// Inverse of [`pair_symbols`].
pub fn unpair_symbols(
    z: &SymbolSequence,
    x_alphabet: Alphabet,
    y_alphabet: Alphabet,
) -> Result<(SymbolSequence, SymbolSequence)> {
    let expected = x_alphabet.size() * y_alphabet.size();
    if z.alphabet().size() != expected {
        return Err(Error::AlphabetMismatch {
            expected,
            actual: z.alphabet().size(),
        });
    }
    let ysize = y_alphabet.size();
    let (xs, ys) = z.as_slice().iter().map(|&s| (s / ysize, s % ysize)).unzip();
    Ok((
        SymbolSequence {
            alphabet: x_alphabet,
            data: xs,
        },
        SymbolSequence {
            alphabet: y_alphabet,
            data: ys,
        },
    ))
}
