import time
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager

import daiquiri
import graphyte

logger = daiquiri.getLogger("helper")


def configure_graphite(settings):
    """Initializes the graphite sender if a graphite server has been configured."""
    if len(settings.get('graphite_ip', '')) > 0:
        logger.info(f"Sending metrics to graphite server: {settings['graphite_ip']}")
        graphyte.init(settings['graphite_ip'], settings['graphite_port'], prefix=settings['graphite_prefix'])


def g_log(*args, **kwargs):
    """Sends diagnostic information to graphite (if configured)."""
    if graphyte.default_sender is None:
        return
    graphyte.default_sender.send(*args, **kwargs)


@contextmanager
def timed(metric):
    """Measures the wall time of the enclosed block and reports it as graphite metric."""
    start = time.perf_counter()
    try:
        yield
    finally:
        elapsed = time.perf_counter() - start
        logger.debug(f"{metric}: {elapsed:.3f} s")
        g_log(metric, elapsed)


def aligned_blocks(total, block):
    """Splits range(total) into consecutive (start, stop) pairs whose starts are multiples of block."""
    return [(start, min(start + block, total)) for start in range(0, total, block)]


def run_blocks(function, blocks, workers):
    """Runs function(start, stop) for every block. With more than one worker the blocks are
       distributed over a thread pool; the results are returned in block order either way."""
    if workers <= 1 or len(blocks) <= 1:
        return [function(start, stop) for start, stop in blocks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda b: function(*b), blocks))
