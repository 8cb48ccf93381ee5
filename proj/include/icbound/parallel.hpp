#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace icbound
{

/// Number of worker threads to use for a request of `threads` (0 = hardware concurrency).
inline unsigned resolve_threads( unsigned threads ) noexcept
{
  if ( threads == 0 )
  {
    threads = std::max( 1u, std::thread::hardware_concurrency() );
  }
  return threads;
}

/// Calls fn(i) for every i in [0, count). Work items are claimed dynamically, so fn must only
/// write to per-index state; callers reduce the results in index order afterwards.
template<typename Fn>
void parallel_for( std::size_t count, unsigned threads, Fn&& fn )
{
  const auto workers = static_cast<std::size_t>( std::min<std::size_t>( resolve_threads( threads ), count ) );
  if ( workers <= 1 )
  {
    for ( std::size_t i = 0; i < count; ++i )
    {
      fn( i );
    }
    return;
  }

  std::atomic<std::size_t> next{ 0 };
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve( workers );
    for ( std::size_t w = 0; w < workers; ++w )
    {
      pool.emplace_back( [&] {
        for ( auto i = next.fetch_add( 1 ); i < count; i = next.fetch_add( 1 ) )
        {
          try
          {
            fn( i );
          }
          catch ( ... )
          {
            std::lock_guard lock( failure_mutex );
            if ( !failure )
            {
              failure = std::current_exception();
            }
          }
        }
      } );
    }
  }
  if ( failure )
  {
    std::rethrow_exception( failure );
  }
}

} // namespace icbound
