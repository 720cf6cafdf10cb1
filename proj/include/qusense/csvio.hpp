#pragma once

// CSV writers for the tabular outputs. One header line, %.17g numbers so a
// rerun with the same seed reproduces files byte for byte.

#include <cstdarg>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "qusense/estimators.hpp"
#include "qusense/montecarlo.hpp"
#include "qusense/planner.hpp"
#include "qusense/spectra.hpp"

namespace qusense {

class CsvFile {
  public:
    explicit CsvFile(const std::string& path) : f_(std::fopen(path.c_str(), "w")) {
        if (!f_) throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    ~CsvFile() {
        if (f_) std::fclose(f_);
    }
    CsvFile(const CsvFile&) = delete;
    CsvFile& operator=(const CsvFile&) = delete;

    void line(const std::string& s) { std::fprintf(f_, "%s\n", s.c_str()); }
    void raw(const char* fmt, ...)
#if defined(__GNUC__)
        __attribute__((format(printf, 2, 3)))
#endif
    {
        va_list ap;
        va_start(ap, fmt);
        std::vfprintf(f_, fmt, ap);
        va_end(ap);
    }

  private:
    std::FILE* f_;
};

inline void write_records_csv(const std::string& path, const ShotRecords& rec) {
    CsvFile f(path);
    f.line("cycle,slot,label,s,shard");
    const bool has_z = !rec.z.empty();
    for (std::size_t c = 0; c < rec.n_chunks(); ++c) {
        const int shard = rec.shard_of_chunk(c);
        for (std::size_t i = rec.chunk_begin(c); i < rec.chunk_end(c); ++i) {
            f.raw("%zu,0,xy,%d,%d\n", i, static_cast<int>(rec.y[i]), shard);
            if (has_z)
                f.raw("%zu,1,xz,%d,%d\n", i, static_cast<int>(rec.z[i]), shard);
        }
    }
}

inline void write_g2_csv(const std::string& path, const LagSeries& s) {
    CsvFile f(path);
    f.line("lag,t,value,stderr");
    for (std::size_t i = 0; i < s.lag.size(); ++i)
        f.raw("%d,%.17g,%.17g,%.17g\n", s.lag[i], s.time_of(i), s.value[i],
              s.se.empty() ? 0.0 : s.se[i]);
}

inline void write_g4_csv(const std::string& path, const Corr4Grid& g) {
    CsvFile f(path);
    f.line("u,v,w,value,stderr");
    for (std::size_t i = 0; i < g.lags.size(); ++i)
        f.raw("%d,%d,%d,%.17g,%.17g\n", g.lags[i][0], g.lags[i][1], g.lags[i][2],
              g.value[i], g.se.empty() ? 0.0 : g.se[i]);
}

inline void write_spectrum_csv(const std::string& path, const Spectrum& sp) {
    CsvFile f(path);
    f.line("omega,re,im,abs,stderr");
    for (std::size_t i = 0; i < sp.omega.size(); ++i)
        f.raw("%.17g,%.17g,%.17g,%.17g,%.17g\n", sp.omega[i], sp.value[i].real(),
              sp.value[i].imag(), std::abs(sp.value[i]), sp.se[i]);
}

inline void write_plan_csv(const std::string& path,
                           const std::vector<PlanPoint>& pts) {
    CsvFile f(path);
    f.line("S_C,gamma0,order,gammaM_opt,T_opt,feasible,snr_bound");
    for (const auto& p : pts)
        f.raw("%.17g,%.17g,%s,%.17g,%.17g,%d,%.17g\n", p.S_C, p.gamma0,
              p.order == Order::Second ? "2nd" : "4th", p.gamma_m_opt, p.t_opt,
              p.feasible ? 1 : 0, p.snr_bound);
}

inline void write_phases_csv(const std::string& path, const ShotRecords& rec) {
    CsvFile f(path);
    f.line("shot_index,phi");
    for (std::size_t i = 0; i < rec.phi.size(); ++i)
        f.raw("%zu,%.17g\n", i, rec.phi[i]);
}

}  // namespace qusense
