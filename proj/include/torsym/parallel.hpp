#pragma once

// Deterministic fork-join helper: the index range is split into ordered
// chunks, each worker produces a vector, and results are concatenated in
// chunk order so the output never depends on scheduling.

#include <cstddef>
#include <thread>
#include <vector>

namespace torsym {

inline unsigned effective_threads(unsigned requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

template <class T, class Fn>
std::vector<T> parallel_collect(std::size_t total, unsigned threads, Fn&& fn) {
    unsigned nt = effective_threads(threads);
    if (total == 0) return {};
    if (nt > total) nt = static_cast<unsigned>(total);
    std::vector<std::vector<T>> chunks(nt);
    std::vector<std::thread> workers;
    std::size_t per = total / nt, extra = total % nt;
    std::size_t begin = 0;
    for (unsigned w = 0; w < nt; ++w) {
        std::size_t len = per + (w < extra ? 1 : 0);
        std::size_t end = begin + len;
        if (nt == 1) {
            chunks[w] = fn(begin, end);
        } else {
            workers.emplace_back([&chunks, w, begin, end, &fn] { chunks[w] = fn(begin, end); });
        }
        begin = end;
    }
    for (auto& t : workers) t.join();
    std::vector<T> out;
    for (auto& c : chunks) out.insert(out.end(), std::make_move_iterator(c.begin()), std::make_move_iterator(c.end()));
    return out;
}

} // namespace torsym
