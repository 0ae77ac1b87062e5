#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <utility>

namespace wikinav {

// Average observed click counts per (source name, target name) link.
class ClickCounts {
public:
    void set(const std::string& src, const std::string& dst, double count) {
        counts_[key(src, dst)] = count;
    }
    void accumulate(const std::string& src, const std::string& dst, double count) {
        counts_[key(src, dst)] += count;
    }
    std::optional<double> get(const std::string& src, const std::string& dst) const {
        auto it = counts_.find(key(src, dst));
        if (it == counts_.end()) return std::nullopt;
        return it->second;
    }
    std::size_t size() const { return counts_.size(); }
    bool empty() const { return counts_.empty(); }

    const std::unordered_map<std::string, double>& entries() const { return counts_; }
    void set_raw(const std::string& k, double v) { counts_[k] = v; }

private:
    // Tab never appears inside node names, so a joined key is unambiguous.
    static std::string key(const std::string& src, const std::string& dst) {
        std::string k;
        k.reserve(src.size() + dst.size() + 1);
        k += src;
        k += '\t';
        k += dst;
        return k;
    }

    std::unordered_map<std::string, double> counts_;
};

}  // namespace wikinav
