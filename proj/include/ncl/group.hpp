#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace ncl {

/// A finite group given by its multiplication table. Elements are indices
/// 0..order-1; the table is validated on construction.
class GroupTable {
public:
    /// Validates the group law (all triples for order <= 64, sampled above).
    GroupTable(std::vector<std::vector<int>> mult, std::vector<std::string> labels = {},
               std::string name = "");

    static GroupTable cyclic(int r);
    static GroupTable symmetric3();
    static GroupTable dihedral4();
    static GroupTable quaternion8();
    /// "C1".."C12", "S3", "D4", "Q8".
    static GroupTable builtin(const std::string& name);

    int order() const { return order_; }
    int identity() const { return identity_; }
    int mul(int a, int b) const { return mult_[static_cast<std::size_t>(a * order_ + b)]; }
    int inverse(int a) const { return inverse_[static_cast<std::size_t>(a)]; }
    int power(int a, std::int64_t k) const;
    int element_order(int a) const;
    const std::string& label(int a) const { return labels_[static_cast<std::size_t>(a)]; }
    const std::string& name() const { return name_; }
    std::vector<std::vector<int>> table() const;

    bool is_abelian() const;
    /// A generator if the group is cyclic, otherwise -1.
    int cyclic_generator() const;
    /// Order is a power of the prime l.
    bool is_l_group(std::int64_t l) const;

    /// Commutator subgroup as a sorted list of element indices.
    std::vector<int> commutator_subgroup() const;

    bool operator==(const GroupTable& other) const { return mult_ == other.mult_; }

private:
    int order_ = 1;
    int identity_ = 0;
    std::vector<int> mult_;
    std::vector<int> inverse_;
    std::vector<std::string> labels_;
    std::string name_;
};

using GroupPtr = std::shared_ptr<const GroupTable>;

/// G -> G/[G, G] with the quotient as a table; projection[g] is the coset index.
struct Abelianization {
    GroupPtr quotient;
    std::vector<int> projection;
};

Abelianization abelianize(const GroupTable& g);

} // namespace ncl
