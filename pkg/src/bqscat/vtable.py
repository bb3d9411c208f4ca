# Generated table of the jump-matrix entries, one expression string per entry.
VTILDE = {
    '1': (
        ('1', '-rt1(k)', 'rc2(w2*k)'),
        ('-rt2(k)', '1+rt1(k)*rt2(k)', 'rh2(1/(w*k))-rc2(w2*k)*rt2(k)'),
        ('-rt2(1/(w2*k)) - r1(1/(w*k))*rt2(k)', 'r1(1/(w*k)) + rt1(k)*( rt2(1/(w2*k)) + r1(1/(w*k))*rt2(k) )', 'f4(w2*k)'),
    ),
    "1'": (
        ('1', '-rt1(k)', '0'),
        ('r1(1/k)', '1-r1(1/k)*rt1(k)', '0'),
        ('0', '0', '1'),
    ),
    "1''": (
        ('1-r2(1/k)*rt2(k)', '-r2(1/k)', '0'),
        ('rt2(k)', '1', '0'),
        ('gt(k)', '-h(k)', '1'),
    ),
    '2': (
        ('1', '-rt1(k)', 'rt2(w2*k)'),
        ('-rt2(k)', '1+rt1(k)*rt2(k)', 'rt2(1/(w*k))-rt2(w2*k)*rt2(k)'),
        ('-rt2(1/(w2*k)) - rt1(1/(w*k))*rt2(k)', 'rt1(1/(w*k)) + rt1(k)*( rt2(1/(w2*k)) + rt1(1/(w*k))*rt2(k) )', 'f2(w2*k)'),
    ),
    "2'": (
        ('1', '0', '0'),
        ('0', '1', 'Rt2(1/(w*k))'),
        ('0', '0', '1'),
    ),
    "2''": (
        ('1', '0', '0'),
        ('0', '1', '0'),
        ('0', 'R1(1/(w*k))', '1'),
    ),
    '3': (
        ('1', '-r1(k)', 'rt2(w2*k)'),
        ('-rh2(k)', '1+r1(k)*rh2(k)', 'rt2(1/(w*k))-rt2(w2*k)*rh2(k)'),
        ('-rc2(1/(w2*k)) - rt1(1/(w*k))*rh2(k)', 'rt1(1/(w*k)) + r1(k)*( rc2(1/(w2*k)) + rt1(1/(w*k))*rh2(k) )', 'f2(w2*k)'),
    ),
    "3'": (
        ('1', '-R1(k)', '0'),
        ('0', '1', '0'),
        ('0', '0', '1'),
    ),
    "3''": (
        ('1', '0', '0'),
        ('-Rt2(k)', '1', '0'),
        ('0', '0', '1'),
    ),
    '4': (
        ('f3(k)', '-r2(1/k) - rt1(1/(w2*k))*r2(w*k)', 'r1(w*k)*r2(1/k) + rt1(1/(w2*k))*(1 + r1(w*k)*r2(w*k))'),
        ('rh2(k)', '1', '-r1(w*k)'),
        ('rc2(1/(w2*k)) - r2(w*k)*rh2(k)', '-r2(w*k)', '1+r1(w*k)*r2(w*k)'),
    ),
    "4'": (
        ('1', 'g(w*k)', '-ht(w*k)'),
        ('0', '1-r2(w*k)*rt2(1/(w*k))', '-rt2(1/(w*k))'),
        ('0', 'r2(w*k)', '1'),
    ),
    "4''": (
        ('1', '0', '0'),
        ('0', '1', '-r1(w*k)'),
        ('0', 'rt1(1/(w*k))', '1-r1(w*k)*rt1(1/(w*k))'),
    ),
    '5': (
        ('f1(k)', '-r2(1/k) - r1(1/(w2*k))*r2(w*k)', 'r1(w*k)*r2(1/k) + r1(1/(w2*k))*(1 + r1(w*k)*r2(w*k))'),
        ('r2(k)', '1', '-r1(w*k)'),
        ('r2(1/(w2*k)) - r2(w*k)*r2(k)', '-r2(w*k)', '1+r1(w*k)*r2(w*k)'),
    ),
    "5'": (
        ('1', '0', '-R1(1/(w2*k))'),
        ('0', '1', '0'),
        ('0', '0', '1'),
    ),
    "5''": (
        ('1', '0', '0'),
        ('0', '1', '0'),
        ('R2(1/(w2*k))', '0', '1'),
    ),
    '6': (
        ('f1(k)', '-rh2(1/k) - r1(1/(w2*k))*rc2(w*k)', 'rt1(w*k)*rh2(1/k) + r1(1/(w2*k))*(1 + rt1(w*k)*rc2(w*k))'),
        ('r2(k)', '1', '-rt1(w*k)'),
        ('r2(1/(w2*k)) - rc2(w*k)*r2(k)', '-rc2(w*k)', '1+rt1(w*k)*rc2(w*k)'),
    ),
    "6'": (
        ('1', '0', '0'),
        ('0', '1', '0'),
        ('0', '-R2(w*k)', '1'),
    ),
    "6''": (
        ('1', '0', '0'),
        ('0', '1', 'R1(w*k)'),
        ('0', '0', '1'),
    ),
    '7': (
        ('1+rt1(w2*k)*rt2(w2*k)', 'rh2(1/k) - rc2(w*k)*rt2(w2*k)', '-rt2(w2*k)'),
        ('rt1(w2*k)*rt2(1/(w*k)) + r1(1/k)*( 1 + rt1(w2*k)*rt2(w2*k) )', 'f4(w*k)', '-rt2( 1/(w*k)) - r1(1/k)*rt2(w2*k)'),
        ('-rt1(w2*k)', 'rc2(w*k)', '1'),
    ),
    "7'": (
        ('1 - r1(1/(w2*k))*rt1(w2*k)', '0', 'r1(1/(w2*k))'),
        ('0', '1', '0'),
        ('-rt1(w2*k)', '0', '1'),
    ),
    "7''": (
        ('1', '0', 'rt2(w2*k)'),
        ('-h(w2*k)', '1', 'gt(w2*k)'),
        ('-r2(1/(w2*k))', '0', '1-r2(1/(w2*k))*rt2(w2*k)'),
    ),
    '8': (
        ('1+rt1(w2*k)*rt2(w2*k)', 'rt2(1/k) - rt2(w*k)*rt2(w2*k)', '-rt2(w2*k)'),
        ('rt1(w2*k)*rt2(1/(w*k)) + rt1(1/k)*( 1 + rt1(w2*k)*rt2(w2*k) )', 'f2(w*k)', '-rt2( 1/(w*k)) - rt1(1/k)*rt2(w2*k)'),
        ('-rt1(w2*k)', 'rt2(w*k)', '1'),
    ),
    "8'": (
        ('1', 'Rt2(1/k)', '0'),
        ('0', '1', '0'),
        ('0', '0', '1'),
    ),
    "8''": (
        ('1', '0', '0'),
        ('R1(1/k)', '1', '0'),
        ('0', '0', '1'),
    ),
    '9': (
        ('1+r1(w2*k)*rh2(w2*k)', 'rt2(1/k) - rt2(w*k)*rh2(w2*k)', '-rh2(w2*k)'),
        ('r1(w2*k)*rc2(1/(w*k)) + rt1(1/k)*( 1 + r1(w2*k)*rh2(w2*k) )', 'f2(w*k)', '-rc2( 1/(w*k)) - rt1(1/k)*rh2(w2*k)'),
        ('-r1(w2*k)', 'rt2(w*k)', '1'),
    ),
    "9'": (
        ('1', '0', '0'),
        ('0', '1', '0'),
        ('-R1(w2*k)', '0', '1'),
    ),
    "9''": (
        ('1', '0', '-Rt2(w2*k)'),
        ('0', '1', '0'),
        ('0', '0', '1'),
    ),
    '10': (
        ('1', '-r1(k)', 'rh2(w2*k)'),
        ('-r2(k)', '1+r1(k)*r2(k)', 'rc2(1/(w*k))-r2(k)*rh2(w2*k)'),
        ('-r2(1/(w2*k))-rt1(1/(w*k))*r2(k)', 'r1(k)*r2(1/(w2*k)) + rt1(1/(w*k))*( 1+r1(k)*r2(k) )', 'f3(w2*k)'),
    ),
    "10'": (
        ('1 - r2(k)*rt2(1/k)', '-rt2(1/k)', '0'),
        ('r2(k)', '1', '0'),
        ('g(k)', '-ht(k)', '1'),
    ),
    "10''": (
        ('1', '-r1(k)', '0'),
        ('rt1(1/k)', '1-r1(k)*rt1(1/k)', '0'),
        ('0', '0', '1'),
    ),
    '11': (
        ('1', '-r1(k)', 'r2(w2*k)'),
        ('-r2(k)', '1+r1(k)*r2(k)', 'r2(1/(w*k))-r2(k)*r2(w2*k)'),
        ('-r2(1/(w2*k))-r1(1/(w*k))*r2(k)', 'r1(k)*r2(1/(w2*k)) + r1(1/(w*k))*( 1+r1(k)*r2(k) )', 'f1(w2*k)'),
    ),
    "11'": (
        ('1', '0', '0'),
        ('0', '1', '0'),
        ('0', '- R1(1/(w*k))', '1'),
    ),
    "11''": (
        ('1', '0', '0'),
        ('0', '1', 'R2(1/(w*k))'),
        ('0', '0', '1'),
    ),
    '12': (
        ('1', '-rt1(k)', 'r2(w2*k)'),
        ('-rc2(k)', '1+rt1(k)*rc2(k)', 'r2(1/(w*k))-rc2(k)*r2(w2*k)'),
        ('-rh2(1/(w2*k))-r1(1/(w*k))*rc2(k)', 'rt1(k)*rh2(1/(w2*k)) + r1(1/(w*k))*( 1+rt1(k)*rc2(k) )', 'f1(w2*k)'),
    ),
    "12'": (
        ('1', '0', '0'),
        ('-R2(k)', '1', '0'),
        ('0', '0', '1'),
    ),
    "12''": (
        ('1', 'R1(k)', '0'),
        ('0', '1', '0'),
        ('0', '0', '1'),
    ),
    '13': (
        ('f4(k)', '-rt2(1/k) - r1(1/(w2*k))*rt2(w*k)', 'rt1(w*k)*rt2(1/k) + r1(1/(w2*k))*( 1 + rt1(w*k)*rt2(w*k) )'),
        ('rc2(k)', '1', '-rt1(w*k)'),
        ('rh2(1/(w2*k)) - rc2(k)*rt2(w*k)', '-rt2(w*k)', '1+rt1(w*k)*rt2(w*k)'),
    ),
    "13'": (
        ('1', '0', '0'),
        ('0', '1', '-rt1(w*k)'),
        ('0', 'r1(1/(w*k))', '1-r1(1/(w*k))*rt1(w*k)'),
    ),
    "13''": (
        ('1', 'gt(w*k)', '-h(w*k)'),
        ('0', '1-r2(1/(w*k))*rt2(w*k)', '-r2(1/(w*k))'),
        ('0', 'rt2(w*k)', '1'),
    ),
    '14': (
        ('f2(k)', '-rt2(1/k) - rt1(1/(w2*k))*rt2(w*k)', 'rt1(w*k)*rt2(1/k) + rt1(1/(w2*k))*( 1 + rt1(w*k)*rt2(w*k) )'),
        ('rt2(k)', '1', '-rt1(w*k)'),
        ('rt2(1/(w2*k)) - rt2(k)*rt2(w*k)', '-rt2(w*k)', '1+rt1(w*k)*rt2(w*k)'),
    ),
    "14'": (
        ('1', '0', '0'),
        ('0', '1', '0'),
        ('Rt2(1/(w2*k))', '0', '1'),
    ),
    "14''": (
        ('1', '0', 'R1(1/(w2*k))'),
        ('0', '1', '0'),
        ('0', '0', '1'),
    ),
    '15': (
        ('f2(k)', '-rc2(1/k) - rt1(1/(w2*k))*rh2(w*k)', 'r1(w*k)*rc2(1/k) + rt1(1/(w2*k))*( 1+r1(w*k)*rh2(w*k) )'),
        ('rt2(k)', '1', '-r1(w*k)'),
        ('rt2(1/(w2*k)) - rt2(k)*rh2(w*k)', '-rh2(w*k)', '1+r1(w*k)*rh2(w*k)'),
    ),
    "15'": (
        ('1', '0', '0'),
        ('0', '1', '-R1(w*k)'),
        ('0', '0', '1'),
    ),
    "15''": (
        ('1', '0', '0'),
        ('0', '1', '0'),
        ('0', '-Rt2(w*k)', '1'),
    ),
    '16': (
        ('1+r1(w2*k)*r2(w2*k)', 'rc2(1/k) - r2(w2*k)*rh2(w*k)', '-r2(w2*k)'),
        ('rt1(1/k) + r1(w2*k)*( r2(1/(w*k)) + rt1(1/k)*r2(w2*k) )', 'f3(w*k)', '-r2(1/(w*k)) - rt1(1/k)*r2(w2*k)'),
        ('-r1(w2*k)', 'rh2(w*k)', '1'),
    ),
    "16'": (
        ('1', '0', 'r2(w2*k)'),
        ('-ht(w2*k)', '1', 'g(w2*k)'),
        ('- rt2(1/(w2*k))', '0', '1-r2(w2*k)*rt2(1/(w2*k))'),
    ),
    "16''": (
        ('1-r1(w2*k)*rt1(1/(w2*k))', '0', 'rt1(1/(w2*k))'),
        ('0', '1', '0'),
        ('-r1(w2*k)', '0', '1'),
    ),
    '17': (
        ('1+r1(w2*k)*r2(w2*k)', 'r2(1/k) - r2(w2*k)*r2(w*k)', '-r2(w2*k)'),
        ('r1(1/k) + r1(w2*k)*( r2(1/(w*k)) + r1(1/k)*r2(w2*k) )', 'f1(w*k)', '-r2(1/(w*k)) - r1(1/k)*r2(w2*k)'),
        ('-r1(w2*k)', 'r2(w*k)', '1'),
    ),
    "17'": (
        ('1', '0', '0'),
        ('-R1(1/k)', '1', '0'),
        ('0', '0', '1'),
    ),
    "17''": (
        ('1', 'R2(1/k)', '0'),
        ('0', '1', '0'),
        ('0', '0', '1'),
    ),
    '18': (
        ('1+rt1(w2*k)*rc2(w2*k)', 'r2(1/k) - rc2(w2*k)*r2(w*k)', '-rc2(w2*k)'),
        ('r1(1/k) + rt1(w2*k)*( rh2(1/(w*k)) + r1(1/k)*rc2(w2*k) )', 'f1(w*k)', '-rh2(1/(w*k)) - r1(1/k)*rc2(w2*k)'),
        ('-rt1(w2*k)', 'r2(w*k)', '1'),
    ),
    "18'": (
        ('1', '0', '-R2(w2*k)'),
        ('0', '1', '0'),
        ('0', '0', '1'),
    ),
    "18''": (
        ('1', '0', '0'),
        ('0', '1', '0'),
        ('R1(w2*k)', '0', '1'),
    ),
}
