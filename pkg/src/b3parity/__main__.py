from b3parity.cli import main

raise SystemExit(main())
