#include "multibin/mse.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace multibin::mse {

namespace {

void require_same_scale(const MsEstimate& a, const MsEstimate& b) {
    if (a.levels() != b.levels()) {
        throw SchemaError("estimate scale mismatch: l=" + std::to_string(a.levels()) +
                          " vs l=" + std::to_string(b.levels()));
    }
}

void require_same_shape(const MsEstimate& a, const MsEstimate& b) {
    require_same_scale(a, b);
    if (a.eta() != b.eta()) {
        throw SchemaError("estimate cardinality mismatch: eta=" + std::to_string(a.eta()) +
                          " vs eta=" + std::to_string(b.eta()));
    }
}

}  // namespace

MsEstimate::MsEstimate(int levels, std::vector<int> counts)
    : levels_(levels), eta_(0), counts_(std::move(counts)) {
    if (levels_ < 1) throw SchemaError("estimate needs at least one level");
    if (static_cast<int>(counts_.size()) != levels_) {
        throw SchemaError("estimate counts must have exactly l entries");
    }
    for (const int c : counts_) {
        if (c < 0) throw SchemaError("estimate counts must be non-negative");
        eta_ += c;
    }
}

bool MsEstimate::is_interval() const {
    int first = -1;
    int last = -1;
    for (int i = 0; i < levels_; ++i) {
        if (counts_[i] > 0) {
            if (first < 0) first = i;
            last = i;
        }
    }
    if (first < 0) return true;  // empty support
    for (int i = first; i <= last; ++i) {
        if (counts_[i] == 0) return false;
    }
    return true;
}

std::vector<int> MsEstimate::sorted_elements() const {
    std::vector<int> out;
    out.reserve(eta_);
    for (int i = 0; i < levels_; ++i) {
        out.insert(out.end(), counts_[i], i + 1);
    }
    return out;
}

int MsEstimate::quality_sum() const {
    int s = 0;
    for (int i = 0; i < levels_; ++i) s += (i + 1) * counts_[i];
    return s;
}

std::string MsEstimate::str() const {
    std::ostringstream os;
    os << levels_ << ',' << eta_ << ":[";
    for (int i = 0; i < levels_; ++i) {
        if (i) os << ',';
        os << counts_[i];
    }
    os << ']';
    return os.str();
}

MsEstimate MsEstimate::parse(const std::string& text) {
    const auto bad = [&] { return SchemaError("bad estimate literal: '" + text + "'"); };
    const auto colon = text.find(':');
    const auto comma = text.find(',');
    if (colon == std::string::npos || comma == std::string::npos || comma > colon) throw bad();
    int l = 0;
    int eta = 0;
    try {
        l = std::stoi(text.substr(0, comma));
        eta = std::stoi(text.substr(comma + 1, colon - comma - 1));
    } catch (const std::exception&) {
        throw bad();
    }
    const auto open = text.find('[', colon);
    const auto close = text.rfind(']');
    if (open == std::string::npos || close == std::string::npos || close < open) throw bad();
    std::vector<int> counts;
    std::string body = text.substr(open + 1, close - open - 1);
    std::istringstream is(body);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        try {
            counts.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw bad();
        }
    }
    MsEstimate e(l, std::move(counts));
    if (e.eta() != eta) {
        throw SchemaError("estimate literal '" + text + "' declares eta=" + std::to_string(eta) +
                          " but counts sum to " + std::to_string(e.eta()));
    }
    return e;
}

bool MsEstimate::canonical_less(const MsEstimate& a, const MsEstimate& b) {
    const int qa = a.quality_sum();
    const int qb = b.quality_sum();
    if (qa != qb) return qa < qb;
    return a.counts() < b.counts();
}

std::uint64_t multiset_coefficient(int l, int eta) {
    if (l < 1 || eta < 1) throw SchemaError("multiset coefficient needs l >= 1 and eta >= 1");
    // C(l + eta - 1, eta), multiplying one factor at a time and dividing by
    // i+1 immediately; the running value stays integral.
    std::uint64_t result = 1;
    for (int i = 0; i < eta; ++i) {
        const unsigned __int128 next =
            static_cast<unsigned __int128>(result) * static_cast<std::uint64_t>(l + i);
        const unsigned __int128 reduced = next / static_cast<std::uint64_t>(i + 1);
        if (reduced > std::numeric_limits<std::uint64_t>::max()) {
            throw OverflowError("multiset coefficient overflows 64 bits");
        }
        result = static_cast<std::uint64_t>(reduced);
    }
    return result;
}

std::vector<MsEstimate> enumerate_scale(int l, int eta) {
    if (l < 1 || eta < 1) throw SchemaError("scale enumeration needs l >= 1 and eta >= 1");
    multiset_coefficient(l, eta);  // reject sizes whose unfiltered count already overflows
    std::vector<MsEstimate> out;
    // Every interval estimate is determined by its support [lo, hi] and a
    // positive composition of eta over the support.
    for (int lo = 0; lo < l; ++lo) {
        for (int hi = lo; hi < l && hi - lo < eta; ++hi) {
            const int span = hi - lo + 1;
            std::vector<int> part(span, 1);
            part[0] = eta - span + 1;
            while (true) {
                std::vector<int> counts(l, 0);
                for (int i = 0; i < span; ++i) counts[lo + i] = part[i];
                out.emplace_back(l, std::move(counts));
                // next composition of eta into span positive parts
                int i = span - 1;
                while (i > 0 && part[i - 1] == 1) --i;
                if (i == 0) break;
                --part[i - 1];
                int tail = 0;
                for (int j = i; j < span; ++j) {
                    tail += part[j];
                    part[j] = 1;
                }
                part[i] = tail + 1 - (span - 1 - i);
            }
        }
    }
    std::sort(out.begin(), out.end(), MsEstimate::canonical_less);
    return out;
}

MsEstimate integrate(const std::vector<MsEstimate>& estimates) {
    if (estimates.empty()) throw SchemaError("integrate needs at least one estimate");
    const int l = estimates.front().levels();
    std::vector<int> counts(l, 0);
    for (const auto& e : estimates) {
        require_same_scale(estimates.front(), e);
        for (int i = 0; i < l; ++i) counts[i] += e.counts()[i];
    }
    return MsEstimate(l, std::move(counts));
}

Proximity proximity(const MsEstimate& a, const MsEstimate& b) {
    require_same_shape(a, b);
    const std::vector<int> ea = a.sorted_elements();
    const std::vector<int> eb = b.sorted_elements();
    Proximity p;
    for (std::size_t i = 0; i < ea.size(); ++i) {
        const int diff = eb[i] - ea[i];
        if (diff > 0) {
            p.delta_plus += diff;
        } else {
            p.delta_minus -= diff;
        }
    }
    return p;
}

namespace {

Ordering compare_sequences(const std::vector<int>& ea, const std::vector<int>& eb) {
    bool a_better = false;
    bool b_better = false;
    for (std::size_t i = 0; i < ea.size(); ++i) {
        if (ea[i] < eb[i]) a_better = true;
        if (eb[i] < ea[i]) b_better = true;
    }
    if (a_better && b_better) return Ordering::Incomparable;
    if (a_better) return Ordering::Better;
    if (b_better) return Ordering::Worse;
    return Ordering::Equal;
}

}  // namespace

Ordering compare(const MsEstimate& a, const MsEstimate& b) {
    require_same_shape(a, b);
    return compare_sequences(a.sorted_elements(), b.sorted_elements());
}

Ordering compare_padded(const MsEstimate& a, const MsEstimate& b) {
    require_same_scale(a, b);
    std::vector<int> ea = a.sorted_elements();
    std::vector<int> eb = b.sorted_elements();
    const std::size_t m = std::max(ea.size(), eb.size());
    ea.resize(m, a.levels() + 1);
    eb.resize(m, b.levels() + 1);
    if (m == 0) return Ordering::Equal;
    return compare_sequences(ea, eb);
}

int total_proximity(const MsEstimate& m, const std::vector<MsEstimate>& estimates) {
    int total = 0;
    for (const auto& e : estimates) total += proximity(m, e).total();
    return total;
}

MsEstimate generalized_median(const std::vector<MsEstimate>& estimates) {
    if (estimates.empty()) throw SchemaError("median of an empty estimate set");
    for (const auto& e : estimates) require_same_shape(estimates.front(), e);
    const auto domain = enumerate_scale(estimates.front().levels(), estimates.front().eta());
    const MsEstimate* best = nullptr;
    int best_total = 0;
    for (const auto& m : domain) {
        const int t = total_proximity(m, estimates);
        if (!best || t < best_total) {
            best = &m;
            best_total = t;
        }
    }
    return *best;
}

MsEstimate set_median(const std::vector<MsEstimate>& estimates) {
    if (estimates.empty()) throw SchemaError("median of an empty estimate set");
    for (const auto& e : estimates) require_same_shape(estimates.front(), e);
    const MsEstimate* best = nullptr;
    int best_total = 0;
    for (const auto& m : estimates) {
        const int t = total_proximity(m, estimates);
        if (!best || t < best_total) {
            best = &m;
            best_total = t;
        }
    }
    return *best;
}

}  // namespace multibin::mse
