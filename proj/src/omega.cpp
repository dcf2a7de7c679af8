#include "skewlab/omega.hpp"

#include <stdexcept>

namespace skewlab {

int BitResult::as_int() const {
    if (value == TriBit::Undecided)
        throw std::logic_error("BitResult: consumed an Undecided bit (" + reason + ")");
    return value == TriBit::One ? 1 : 0;
}

IndexChain& IndexChain::shift(i128 k) {
    Atom a;
    a.kind = Atom::Kind::Shift;
    a.shift_by = k;
    atoms_.push_back(std::move(a));
    return *this;
}

IndexChain& IndexChain::permute(std::shared_ptr<const Permutation> pi, bool inverse) {
    Atom a;
    a.kind = Atom::Kind::Permute;
    a.perm = std::move(pi);
    a.perm_inverse = inverse;
    atoms_.push_back(std::move(a));
    return *this;
}

IndexChain& IndexChain::flip(std::shared_ptr<const CoordSet> q_set) {
    Atom a;
    a.kind = Atom::Kind::Flip;
    a.flip_set = std::move(q_set);
    atoms_.push_back(std::move(a));
    return *this;
}

IndexChain IndexChain::then(const IndexChain& next) const {
    IndexChain out = *this;
    out.atoms_.insert(out.atoms_.end(), next.atoms_.begin(), next.atoms_.end());
    return out;
}

BitResult IndexChain::read(const OmegaOracle& omega, i128 q) const {
    int parity = 0;
    for (const Atom& a : atoms_) {
        switch (a.kind) {
            case Atom::Kind::Shift:
                q = checked_add(q, a.shift_by);
                break;
            case Atom::Kind::Permute: {
                std::optional<i128> r = a.perm_inverse ? a.perm->inverse(q) : a.perm->forward(q);
                if (!r) {
                    return {TriBit::Undecided,
                            "horizon exhausted in perm(" + a.perm->name() +
                                (a.perm_inverse ? ",inv)" : ",fwd)") + " at index " +
                                skewlab::to_string(q)};
                }
                q = *r;
                break;
            }
            case Atom::Kind::Flip:
                if (a.flip_set->contains(q)) parity ^= 1;
                break;
        }
    }
    return {tri_of(omega.bit(q) ^ parity), ""};
}

std::string IndexChain::to_string() const {
    std::string out;
    for (const Atom& a : atoms_) {
        if (!out.empty()) out += "|";
        switch (a.kind) {
            case Atom::Kind::Shift:
                out += "shift(" + skewlab::to_string(a.shift_by) + ")";
                break;
            case Atom::Kind::Permute:
                out += "perm(" + a.perm->name() + (a.perm_inverse ? ",inv)" : ",fwd)");
                break;
            case Atom::Kind::Flip:
                out += "flip(" + a.flip_set->name() + ")";
                break;
        }
    }
    return out.empty() ? "id" : out;
}

BitResult read_transformed(const OmegaOracle& oracle, const IndexChain& chain, i128 q) {
    return chain.read(oracle, q);
}

BitResult cylinder_indicator(const OmegaOracle& oracle, const IndexChain& chain,
                             const CylinderSpec& cyl) {
    for (size_t i = 0; i < cyl.word.size(); ++i) {
        BitResult b = chain.read(oracle, checked_add(cyl.base_index, static_cast<i128>(i)));
        if (!b.decided()) return b;
        if (b.as_int() != cyl.word[i]) return {TriBit::Zero, ""};
    }
    return {TriBit::One, ""};
}

}  // namespace skewlab
