#include "orbitstar/pbw.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace orbitstar {

std::string PBWElement::to_string() const {
    if (terms_.empty()) return "0";
    // sort by filtration degree, then lexicographic word order
    std::vector<const std::pair<const Word, HPoly>*> ts;
    for (const auto& t : terms_) ts.push_back(&t);
    std::sort(ts.begin(), ts.end(), [](const auto* a, const auto* b) {
        if (a->first.size() != b->first.size()) return a->first.size() < b->first.size();
        return a->first < b->first;
    });
    std::ostringstream os;
    bool first = true;
    for (const auto* t : ts) {
        if (!first) os << " + ";
        first = false;
        std::string c = t->second.to_string();
        if (t->first.empty()) {
            os << c;
        } else {
            if (c != "1") os << "(" << c << ")*";
            for (std::size_t i = 0; i < t->first.size(); ++i)
                os << (i ? "*" : "") << "X" << t->first[i];
        }
    }
    return os.str();
}

const PBWElement& PBWContext::normal_order(const Word& w) {
    auto it = memo_.find(w);
    if (it != memo_.end()) return it->second;
    for (int i : w)
        if (i < 1 || i > A_.n)
            throw std::invalid_argument("normal_order: generator index out of range");

    PBWElement result;
    // leftmost descent
    std::size_t t = 0;
    while (t + 1 < w.size() && w[t] <= w[t + 1]) ++t;
    if (w.size() < 2 || t + 1 == w.size()) {
        result = PBWElement::basis_word(w);
    } else {
        // X_a X_b = X_b X_a + h * sum_k c_ab^k X_k   (a = w[t] > b = w[t+1])
        Word swapped = w;
        std::swap(swapped[t], swapped[t + 1]);
        result = normal_order(swapped);
        int a = w[t], b = w[t + 1];
        Word reduced;
        reduced.reserve(w.size() - 1);
        reduced.assign(w.begin(), w.begin() + t);
        reduced.push_back(0);  // slot for k
        reduced.insert(reduced.end(), w.begin() + t + 2, w.end());
        for (int k = 1; k <= A_.n; ++k) {
            Rational c = A_.structure(a, b, k);
            if (c == 0) continue;
            reduced[t] = k;
            PBWElement sub = normal_order(reduced);
            sub *= HPoly(c, 1);
            result += sub;
        }
    }
    return memo_.emplace(w, std::move(result)).first->second;
}

PBWElement PBWContext::mul(const PBWElement& a, const PBWElement& b) {
    PBWElement out;
    for (const auto& [wa, ca] : a.terms())
        for (const auto& [wb, cb] : b.terms()) {
            Word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            PBWElement no = normal_order(w);
            no *= ca * cb;
            out += no;
        }
    return out;
}

PBWElement PBWContext::commutator(const PBWElement& a, const PBWElement& b) {
    return mul(a, b) - mul(b, a);
}

bool PBWContext::center_check(const PBWElement& u) {
    for (int i = 1; i <= A_.n; ++i)
        if (!commutator(u, generator(i)).is_zero()) return false;
    return true;
}

}  // namespace orbitstar
