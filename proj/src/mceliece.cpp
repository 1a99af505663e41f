#include "qcmdpc/mceliece.hpp"

#include <stdexcept>
#include <string>

namespace qcmdpc {

BitVec sample_error(uint32_t n, uint32_t t, Rng& rng)
{
    return BitVec::from_support(n, rng.distinct(n, t));
}

BitVec encrypt(const PublicKey& pub, const BitVec& m, const BitVec& e)
{
    uint32_t r = pub.params.r, n = pub.params.n;
    if (m.size() != r)
        throw std::invalid_argument("plaintext length " + std::to_string(m.size()) +
                                    " does not match message size " + std::to_string(r));
    if (e.size() != n)
        throw std::invalid_argument("error length " + std::to_string(e.size()) +
                                    " does not match code length " + std::to_string(n));
    RingElement redundancy = RingElement::from_bits(m) * pub.q;
    BitVec c(n);
    bits::xor_into(c.words().data(), 0, m.words().data(), r);
    bits::xor_into(c.words().data(), r, redundancy.words().data(), r);
    return c ^ e;
}

DecryptResult decrypt(const PrivateKey& priv, const BitVec& c, const DecoderConfig& cfg)
{
    if (c.size() != priv.params.n)
        throw std::invalid_argument("ciphertext length does not match code length");
    BitFlipDecoder decoder(priv);
    DecodeResult decoded = decoder.decode(c, cfg);
    DecryptResult res;
    res.ok = decoded.success;
    if (res.ok) {
        res.plaintext = decoded.corrected.slice(0, priv.params.r);
        res.error = decoded.corrected ^ c;
    }
    res.decode = std::move(decoded);
    return res;
}

} // namespace qcmdpc
