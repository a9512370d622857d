#ifndef RADSHOCK_PROFILE_IO_HPP
#define RADSHOCK_PROFILE_IO_HPP

#include "radshock/profile_glue.hpp"

#include <iosfwd>
#include <string>

namespace radshock {

// Profile CSV: '#' metadata lines carrying the system constants, then a
// header row and the fixed column order
//   xi,v_hat,w,v,rho,u,e,theta,P,q,n        (gas)
//   xi,v_hat,w,q                            (scalar model)
// All values at 17 significant digits, so a round-trip is bit-exact.
void write_profile_csv(const Profile& p, std::ostream& os);
Profile read_profile_csv(std::istream& is);

void write_profile_csv_file(const Profile& p, const std::string& path);
Profile read_profile_csv_file(const std::string& path);

} // namespace radshock

#endif
